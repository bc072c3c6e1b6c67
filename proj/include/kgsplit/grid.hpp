#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace kgsplit {

/// Uniform collocation grid on the box [0, 2pi)^d with d in {1, 2, 3}.
///
/// Storage is row-major (the last axis varies fastest) in FFT order: along
/// axis j the index i carries the wavenumber i for i < N_j/2 and i - N_j
/// otherwise, so every axis covers exactly -N_j/2, ..., N_j/2 - 1.
class TorusGrid {
 public:
  /// Throws ContractViolation unless 1 <= modes.size() <= 3 and each entry
  /// is a power of two >= 4.
  explicit TorusGrid(std::vector<int> modes);

  int dim() const noexcept { return dim_; }
  int modes(int axis) const { return modes_.at(static_cast<std::size_t>(axis)); }
  const std::vector<int>& mode_counts() const noexcept { return modes_; }
  std::size_t size() const noexcept { return size_; }

  /// Wavenumber belonging to storage index i along axis.
  int wavenumber(int axis, int i) const {
    const int n = modes(axis);
    return i < n / 2 ? i : i - n;
  }

  /// Storage index for wavenumber k along axis (k in [-N/2, N/2)).
  int index_of(int axis, int k) const {
    const int n = modes(axis);
    return k >= 0 ? k : k + n;
  }

  /// Integer wavenumber vector of flat index idx; unused axes are 0.
  std::array<int, 3> wavevector(std::size_t idx) const;

  /// Flat index of a wavevector given with dim() meaningful entries.
  std::size_t flat_index(const std::array<int, 3>& k) const;

  /// |k|^2 for every flat index, in storage order.
  std::vector<double> squared_wavenumbers() const;

  /// Physical coordinate x_j = 2pi i / N_j of storage index i along axis.
  double coordinate(int axis, int i) const;

  /// Cell volume (2pi)^d / prod N_j of the trapezoidal rule.
  double cell_volume() const;

  /// (2pi)^d.
  double volume() const;

  friend bool operator==(const TorusGrid&, const TorusGrid&) = default;

 private:
  int dim_;
  std::vector<int> modes_;
  std::size_t size_;
};

}  // namespace kgsplit
