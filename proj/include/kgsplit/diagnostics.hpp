#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "kgsplit/field.hpp"
#include "kgsplit/model.hpp"
#include "kgsplit/schemes.hpp"

namespace kgsplit {

/// E = int |z_t|^2 + |grad z|^2 + m |z|^2 - (lambda/2) |z|^4 dx over
/// [0, 2pi)^d. Quadratic terms via Parseval, the quartic term by the
/// trapezoidal rule on the collocation grid (aliased, like the scheme).
double energy(const StateU& state);

/// Largest |E(t_n) - E(0)| / |E(0)| over a trajectory.
double max_relative_energy_drift(const Trajectory& traj);

/// sobolev_norm(a - b, s). Throws ContractViolation on a grid mismatch.
double error_norm(const StateU& a, const StateU& b, const ModelParams& params, double s);

/// Frequency placed on the dispersive characteristic of the time weight.
enum class BourgainFrequency {
  AbsK,      ///< |k|
  BracketK,  ///< <k> with the model's m
};

enum class BourgainWindow { None, SmoothBump };

std::string_view to_string(BourgainFrequency f);
std::string_view to_string(BourgainWindow w);
BourgainFrequency parse_bourgain_frequency(std::string_view text);
BourgainWindow parse_bourgain_window(std::string_view text);

struct BourgainSpec {
  double s = 0.0;
  double b = 0.0;
  /// Sampling interval; 0 means "take it from the trajectory".
  double tau = 0.0;
  BourgainWindow window = BourgainWindow::None;
  BourgainFrequency frequency = BourgainFrequency::AbsK;
  /// Weight centred at sigma - omega_k when false (as commonly printed),
  /// at sigma + omega_k when true. The latter is where the free evolution
  /// exp(-i n tau <k>) concentrates under the exp(-i n tau sigma) transform.
  bool plus_sign = false;
};

/// d_tau(sigma) = (exp(i tau sigma) - 1) / tau.
Complex d_tau(double sigma, double tau);

/// <d_tau(sigma_j -/+ omega)>^{2b} with <x> = (1 + |x|^2)^{1/2} on the
/// lattice sigma_j = 2 pi j / (M tau). j is reduced modulo M first, so the
/// weight is exactly 2pi/tau periodic in sigma.
double bourgain_time_weight(long long j, long long samples, double tau, double omega,
                            double b, bool plus_sign = false);

/// Discrete Bourgain norm of the trajectory extended by zero (or tapered by
/// a smooth bump) outside its samples:
///   u~(sigma_j, k) = tau sum_n u_n(k) exp(-i n tau sigma_j),
///   norm^2 = sum_k sum_j (1 / (M tau)) <k>^{2s} <d_tau(sigma_j - omega_k)>^{2b}
///            |u~(sigma_j, k)|^2.
/// At b = 0 this equals tau sum_n ||u_n||_{H^s}^2.
double discrete_bourgain_norm(const Trajectory& traj, const BourgainSpec& spec,
                              const ModelParams& params);

/// Value of the smooth bump exp(1 - 1/(1 - y^2)) at sample n of M.
double smooth_bump(long long n, long long samples);

struct OrderFit {
  double order = 0.0;
  double constant = 0.0;
  double r_squared = 0.0;
};

/// Least-squares fit of log(error) = order * log(tau) + log(constant).
/// Needs >= 3 points, strictly decreasing taus and positive errors.
OrderFit fit_order(std::span<const double> taus, std::span<const double> errors);

}  // namespace kgsplit
