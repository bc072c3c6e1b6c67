#include "kgsplit/operators.hpp"

#include <cmath>

#include "kgsplit/errors.hpp"

namespace kgsplit {

std::vector<double> bracket_table(const TorusGrid& grid, double m, double alpha) {
  const BracketSymbol symbol{m, alpha};
  std::vector<double> k2 = grid.squared_wavenumbers();
  for (double& v : k2) {
    if (v == 0.0 && m == 0.0) {
      v = alpha == 0.0 ? 1.0 : 0.0;
    } else {
      v = symbol(v);
    }
  }
  return k2;
}

namespace {

void check_zero_mode(const SpectralField& spectral, const ModelParams& params,
                     double alpha) {
  if (params.zero_mode == ZeroModePolicy::Strict &&
      BracketSymbol{params.m, alpha}.singular_at_zero() && spectral[0] != Complex{}) {
    throw SingularOperator(
        "<grad>^alpha with m = 0 and alpha < 0 applied to a field with a nonzero "
        "zero mode (strict policy)");
  }
}

SpectralField multiply(const SpectralField& spectral, const std::vector<double>& table) {
  std::vector<Complex> out(spectral.data().begin(), spectral.data().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= table[i];
  return SpectralField(spectral.grid(), Representation::Spectral, std::move(out));
}

}  // namespace

SpectralField apply_bracket(const SpectralField& field, const ModelParams& params,
                            double alpha) {
  params.validate();
  const SpectralField spectral = as_spectral(field);
  check_zero_mode(spectral, params, alpha);
  return multiply(spectral, bracket_table(field.grid(), params.m, alpha));
}

SpectralField apply_linear_phase(const SpectralField& field, const ModelParams& params,
                                 double t) {
  params.validate();
  const SpectralField spectral = as_spectral(field);
  const std::vector<double> omega = bracket_table(field.grid(), params.m, 1.0);
  std::vector<Complex> out(spectral.data().begin(), spectral.data().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= std::polar(1.0, -t * omega[i]);
  return SpectralField(field.grid(), Representation::Spectral, std::move(out));
}

bool projector_keeps(const std::array<int, 3>& k, int dim, double tau) {
  for (int axis = 0; axis < dim; ++axis) {
    const double scaled = tau * k[static_cast<std::size_t>(axis)];
    if (!(scaled >= -1.0 && scaled < 1.0)) return false;
  }
  return true;
}

std::vector<double> projector_mask(const TorusGrid& grid, double tau) {
  if (!(tau > 0.0)) throw ContractViolation("projector: tau must be positive");
  std::vector<double> mask(grid.size());
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    mask[idx] = projector_keeps(grid.wavevector(idx), grid.dim(), tau) ? 1.0 : 0.0;
  }
  return mask;
}

SpectralField projector(const SpectralField& field, double tau) {
  return multiply(as_spectral(field), projector_mask(field.grid(), tau));
}

std::vector<double> dealias_mask(const TorusGrid& grid) {
  std::vector<double> mask(grid.size());
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const auto k = grid.wavevector(idx);
    bool keep = true;
    for (int axis = 0; axis < grid.dim(); ++axis) {
      keep = keep && 3 * std::abs(k[static_cast<std::size_t>(axis)]) <= grid.modes(axis);
    }
    mask[idx] = keep ? 1.0 : 0.0;
  }
  return mask;
}

SpectralField real_cube(const SpectralField& field, bool dealias) {
  SpectralField input = field;
  if (dealias) input = to_physical(multiply(as_spectral(field), dealias_mask(field.grid())));
  const SpectralField physical = as_physical(input);
  std::vector<Complex> out(physical.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double re = physical[i].real();
    out[i] = Complex{re * re * re, 0.0};
  }
  SpectralField cube(field.grid(), Representation::Physical, std::move(out));
  if (!dealias) return cube;
  SpectralField truncated = multiply(to_spectral(cube), dealias_mask(field.grid()));
  std::vector<Complex> values = std::move(to_physical(truncated)).release();
  for (Complex& v : values) v = Complex{v.real(), 0.0};
  return SpectralField(field.grid(), Representation::Physical, std::move(values));
}

double sobolev_norm(const SpectralField& field, const ModelParams& params, double s) {
  params.validate();
  const SpectralField spectral = as_spectral(field);
  check_zero_mode(spectral, params, 2.0 * s);
  const std::vector<double> weight = bracket_table(field.grid(), params.m, 2.0 * s);
  double acc = 0.0;
  for (std::size_t i = 0; i < spectral.size(); ++i) acc += weight[i] * std::norm(spectral[i]);
  return std::sqrt(acc);
}

}  // namespace kgsplit
