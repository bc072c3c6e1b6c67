#include "kgsplit/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fft.hpp"
#include "kgsplit/errors.hpp"

namespace kgsplit {

SpectralField::SpectralField(TorusGrid grid, Representation rep,
                             std::vector<Complex> data)
    : grid_(std::move(grid)), rep_(rep), data_(std::move(data)) {
  if (data_.size() != grid_.size()) {
    throw ContractViolation("SpectralField: expected " + std::to_string(grid_.size()) +
                            " values, got " + std::to_string(data_.size()));
  }
}

SpectralField SpectralField::zeros(const TorusGrid& grid, Representation rep) {
  return SpectralField(grid, rep, std::vector<Complex>(grid.size()));
}

SpectralField SpectralField::sample(
    const TorusGrid& grid, const std::function<Complex(std::span<const double>)>& f) {
  std::vector<Complex> values(grid.size());
  std::array<double, 3> x{0.0, 0.0, 0.0};
  const int d = grid.dim();
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    std::size_t rest = idx;
    for (int axis = d - 1; axis >= 0; --axis) {
      const auto n = static_cast<std::size_t>(grid.modes(axis));
      x[static_cast<std::size_t>(axis)] = grid.coordinate(axis, static_cast<int>(rest % n));
      rest /= n;
    }
    values[idx] = f(std::span<const double>(x.data(), static_cast<std::size_t>(d)));
  }
  return SpectralField(grid, Representation::Physical, std::move(values));
}

Complex SpectralField::coefficient(const std::array<int, 3>& k) const {
  if (!is_spectral()) {
    throw ContractViolation("coefficient: field is in the physical representation");
  }
  for (int axis = 0; axis < grid_.dim(); ++axis) {
    const int n = grid_.modes(axis);
    const int kj = k[static_cast<std::size_t>(axis)];
    if (kj < -n / 2 || kj >= n / 2) {
      throw ContractViolation("coefficient: wavenumber outside the grid");
    }
  }
  return data_[grid_.flat_index(k)];
}

SpectralField to_spectral(const SpectralField& field) {
  if (field.is_spectral()) {
    throw ContractViolation("to_spectral: field is already spectral");
  }
  std::vector<Complex> data(field.data().begin(), field.data().end());
  detail::FftEngine::for_shape(field.grid().mode_counts()).forward(data);
  return SpectralField(field.grid(), Representation::Spectral, std::move(data));
}

SpectralField to_physical(const SpectralField& field) {
  if (!field.is_spectral()) {
    throw ContractViolation("to_physical: field is already physical");
  }
  std::vector<Complex> data(field.data().begin(), field.data().end());
  detail::FftEngine::for_shape(field.grid().mode_counts()).backward(data);
  return SpectralField(field.grid(), Representation::Physical, std::move(data));
}

SpectralField as_spectral(const SpectralField& field) {
  return field.is_spectral() ? field : to_spectral(field);
}

SpectralField as_physical(const SpectralField& field) {
  return field.is_spectral() ? to_physical(field) : field;
}

namespace {

void require_compatible(const SpectralField& a, const SpectralField& b,
                        const char* what) {
  if (!(a.grid() == b.grid())) {
    throw ContractViolation(std::string(what) + ": grid mismatch");
  }
  if (a.rep() != b.rep()) {
    throw ContractViolation(std::string(what) + ": representation mismatch");
  }
}

template <typename Op>
SpectralField combine(const SpectralField& a, const SpectralField& b, Op op) {
  std::vector<Complex> out(a.size());
  std::transform(a.data().begin(), a.data().end(), b.data().begin(), out.begin(), op);
  return SpectralField(a.grid(), a.rep(), std::move(out));
}

}  // namespace

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  require_compatible(a, b, "operator+");
  return combine(a, b, std::plus<>{});
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  require_compatible(a, b, "operator-");
  return combine(a, b, std::minus<>{});
}

SpectralField operator*(Complex c, const SpectralField& a) {
  std::vector<Complex> out(a.size());
  std::transform(a.data().begin(), a.data().end(), out.begin(),
                 [c](Complex v) { return c * v; });
  return SpectralField(a.grid(), a.rep(), std::move(out));
}

Complex spectral_inner(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) throw ContractViolation("spectral_inner: grid mismatch");
  const SpectralField sa = as_spectral(a);
  const SpectralField sb = as_spectral(b);
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < sa.size(); ++i) acc += std::conj(sa[i]) * sb[i];
  return acc;
}

double max_imag_physical(const SpectralField& field) {
  const SpectralField p = as_physical(field);
  double worst = 0.0;
  for (const Complex& v : p.data()) worst = std::max(worst, std::abs(v.imag()));
  return worst;
}

}  // namespace kgsplit
