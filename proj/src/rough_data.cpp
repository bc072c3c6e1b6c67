#include "kgsplit/rough_data.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "kgsplit/errors.hpp"
#include "kgsplit/operators.hpp"

namespace kgsplit {

double uniform_u53(std::uint64_t raw) noexcept {
  return static_cast<double>(raw >> 11) * 0x1.0p-53;
}

StateU generate(const RoughDataSpec& spec) {
  spec.params.validate();
  const TorusGrid& grid = spec.grid;
  const int d = grid.dim();
  const double alpha = -(spec.s + 0.5 * d + spec.epsilon);
  const std::vector<double> amplitude = bracket_table(grid, spec.params.m, alpha);
  if (spec.params.zero_mode == ZeroModePolicy::Strict &&
      BracketSymbol{spec.params.m, alpha}.singular_at_zero()) {
    throw SingularOperator("generate: <k>^alpha undefined at k = 0 for m = 0");
  }

  std::mt19937_64 rng(spec.seed);
  std::vector<Complex> coeffs(grid.size());
  std::array<int, 3> k{0, 0, 0};
  for (int axis = 0; axis < d; ++axis) k[static_cast<std::size_t>(axis)] = -grid.modes(axis) / 2;
  for (std::size_t visited = 0; visited < grid.size(); ++visited) {
    const double f = uniform_u53(rng());
    const double g = uniform_u53(rng());
    const std::size_t idx = grid.flat_index(k);
    coeffs[idx] = amplitude[idx] * Complex{f, g};
    // Odometer increment, last axis fastest.
    for (int axis = d - 1; axis >= 0; --axis) {
      auto& kj = k[static_cast<std::size_t>(axis)];
      if (++kj < grid.modes(axis) / 2) break;
      kj = -grid.modes(axis) / 2;
    }
  }

  SpectralField u(grid, Representation::Spectral, std::move(coeffs));
  const double norm = sobolev_norm(u, spec.params, spec.norm_index);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw ContractViolation("generate: data has no mass in the normalization norm");
  }
  return {Complex{1.0 / norm, 0.0} * u, 0.0, spec.params};
}

namespace {

void require_real(const SpectralField& field, const char* name) {
  const SpectralField p = as_physical(field);
  double scale = 1.0;
  for (const Complex& v : p.data()) scale = std::max(scale, std::abs(v.real()));
  if (max_imag_physical(p) >= 1e-12 * scale) {
    throw ContractViolation(std::string("u_from_z: ") + name + " is not real-valued");
  }
}

SpectralField real_part(const SpectralField& physical) {
  std::vector<Complex> out(physical.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {physical[i].real(), 0.0};
  return SpectralField(physical.grid(), Representation::Physical, std::move(out));
}

}  // namespace

StateU u_from_z(const SpectralField& z0, const SpectralField& z1,
                const ModelParams& params) {
  if (!(z0.grid() == z1.grid())) throw ContractViolation("u_from_z: grid mismatch");
  require_real(z0, "z0");
  require_real(z1, "z1");
  const SpectralField zt_scaled = apply_bracket(z1, params, -1.0);
  return {as_spectral(z0) + Complex{0.0, 1.0} * zt_scaled, 0.0, params};
}

std::pair<SpectralField, SpectralField> z_from_u(const StateU& state) {
  const SpectralField u = as_physical(state.u);
  std::vector<Complex> im(u.size());
  for (std::size_t i = 0; i < im.size(); ++i) im[i] = {u[i].imag(), 0.0};
  const SpectralField zt = apply_bracket(
      SpectralField(u.grid(), Representation::Physical, std::move(im)), state.params, 1.0);
  return {real_part(u), real_part(to_physical(zt))};
}

}  // namespace kgsplit
