#include "kgsplit/grid.hpp"

#include <numbers>
#include <string>

#include "kgsplit/errors.hpp"

namespace kgsplit {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

TorusGrid::TorusGrid(std::vector<int> modes)
    : dim_(static_cast<int>(modes.size())), modes_(std::move(modes)), size_(1) {
  if (dim_ < 1 || dim_ > 3) {
    throw ContractViolation("TorusGrid: dimension must be 1, 2 or 3, got " +
                            std::to_string(dim_));
  }
  for (int n : modes_) {
    if (n < 4 || !is_power_of_two(n)) {
      throw ContractViolation(
          "TorusGrid: mode counts must be powers of two >= 4, got " +
          std::to_string(n));
    }
    size_ *= static_cast<std::size_t>(n);
  }
}

std::array<int, 3> TorusGrid::wavevector(std::size_t idx) const {
  std::array<int, 3> k{0, 0, 0};
  for (int axis = dim_ - 1; axis >= 0; --axis) {
    const auto n = static_cast<std::size_t>(modes_[static_cast<std::size_t>(axis)]);
    k[static_cast<std::size_t>(axis)] = wavenumber(axis, static_cast<int>(idx % n));
    idx /= n;
  }
  return k;
}

std::size_t TorusGrid::flat_index(const std::array<int, 3>& k) const {
  std::size_t idx = 0;
  for (int axis = 0; axis < dim_; ++axis) {
    idx = idx * static_cast<std::size_t>(modes(axis)) +
          static_cast<std::size_t>(index_of(axis, k[static_cast<std::size_t>(axis)]));
  }
  return idx;
}

std::vector<double> TorusGrid::squared_wavenumbers() const {
  std::vector<double> out(size_);
  for (std::size_t idx = 0; idx < size_; ++idx) {
    const auto k = wavevector(idx);
    double k2 = 0.0;
    for (int axis = 0; axis < dim_; ++axis) {
      const double kj = k[static_cast<std::size_t>(axis)];
      k2 += kj * kj;
    }
    out[idx] = k2;
  }
  return out;
}

double TorusGrid::coordinate(int axis, int i) const {
  return 2.0 * std::numbers::pi * static_cast<double>(i) / modes(axis);
}

double TorusGrid::cell_volume() const {
  return volume() / static_cast<double>(size_);
}

double TorusGrid::volume() const {
  double v = 1.0;
  for (int axis = 0; axis < dim_; ++axis) v *= 2.0 * std::numbers::pi;
  return v;
}

}  // namespace kgsplit
