#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "kgsplit/grid.hpp"

namespace kgsplit {

using Complex = std::complex<double>;

enum class Representation { Physical, Spectral };

/// Complex scalar field on a TorusGrid, held in exactly one representation.
///
/// Physical: samples u(x_j) at the collocation points.
/// Spectral: coefficients u_k of u(x) = sum_k u_k exp(i<k, x>), i.e. the
/// unnormalized DFT divided by the total point count.
///
/// Fields are immutable values; every operation returns a new field.
class SpectralField {
 public:
  SpectralField(TorusGrid grid, Representation rep, std::vector<Complex> data);

  static SpectralField zeros(const TorusGrid& grid, Representation rep);

  /// Samples f at every grid point; x has dim() meaningful entries.
  static SpectralField sample(const TorusGrid& grid,
                              const std::function<Complex(std::span<const double>)>& f);

  const TorusGrid& grid() const noexcept { return grid_; }
  Representation rep() const noexcept { return rep_; }
  bool is_spectral() const noexcept { return rep_ == Representation::Spectral; }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<const Complex> data() const noexcept { return data_; }
  const Complex& operator[](std::size_t i) const { return data_[i]; }

  /// Coefficient of wavevector k; requires the spectral representation.
  Complex coefficient(const std::array<int, 3>& k) const;

  /// Moves the storage out; the field is left empty.
  std::vector<Complex> release() && { return std::move(data_); }

 private:
  TorusGrid grid_;
  Representation rep_;
  std::vector<Complex> data_;
};

/// Forward transform; throws ContractViolation on a spectral field.
SpectralField to_spectral(const SpectralField& field);
/// Inverse transform; throws ContractViolation on a physical field.
SpectralField to_physical(const SpectralField& field);

/// Converting views: return the field unchanged if it is already in the
/// requested representation.
SpectralField as_spectral(const SpectralField& field);
SpectralField as_physical(const SpectralField& field);

// Linear algebra on fields of identical grid and representation.
SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(Complex c, const SpectralField& a);

/// Spectral inner product sum_k conj(a_k) b_k (both converted to spectral).
Complex spectral_inner(const SpectralField& a, const SpectralField& b);

/// Largest |imaginary part| over the physical samples.
double max_imag_physical(const SpectralField& field);

}  // namespace kgsplit
