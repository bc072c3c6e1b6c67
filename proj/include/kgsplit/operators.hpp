#pragma once

#include <vector>

#include "kgsplit/field.hpp"
#include "kgsplit/model.hpp"

namespace kgsplit {

/// Multiplier of <grad>^alpha at every flat index (storage order).
///
/// At m = 0, k = 0 the entry is 1 for alpha = 0 and 0 otherwise; callers
/// enforce ZeroModePolicy::Strict separately (see apply_bracket).
std::vector<double> bracket_table(const TorusGrid& grid, double m, double alpha);

/// <grad>^alpha u. Returns a spectral field.
/// Throws SingularOperator for m = 0, alpha < 0, a nonzero zero mode and the
/// strict policy.
SpectralField apply_bracket(const SpectralField& field, const ModelParams& params,
                            double alpha);

/// exp(-i t <grad>) u. Returns a spectral field.
SpectralField apply_linear_phase(const SpectralField& field, const ModelParams& params,
                                 double t);

/// Whether the sharp cutoff Pi_tau keeps wavevector k: tau * k_j in [-1, 1)
/// on every axis.
bool projector_keeps(const std::array<int, 3>& k, int dim, double tau);

/// 1.0 where Pi_tau keeps the mode, 0.0 elsewhere (storage order).
std::vector<double> projector_mask(const TorusGrid& grid, double tau);

/// Pi_tau u. Requires tau > 0. Returns a spectral field.
SpectralField projector(const SpectralField& field, double tau);

/// 2/3-rule mask: keeps |k_j| <= N_j / 3 on every axis.
std::vector<double> dealias_mask(const TorusGrid& grid);

/// Physical field with samples (Re u(x_j))^3 and zero imaginary part,
/// computed pointwise on the collocation grid. With dealias set, the input
/// and the output are truncated by the 2/3 rule (truncation only: for a
/// cubic this removes part, not all, of the aliasing).
SpectralField real_cube(const SpectralField& field, bool dealias = false);

/// (sum_k (m + |k|^2)^s |u_k|^2)^(1/2), coefficient convention, no volume
/// factor.
double sobolev_norm(const SpectralField& field, const ModelParams& params, double s);

}  // namespace kgsplit
