#include "kgsplit/diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "kgsplit/errors.hpp"
#include "kgsplit/operators.hpp"
#include "kgsplit/rough_data.hpp"

namespace kgsplit {

double energy(const StateU& state) {
  const auto [z, zt] = z_from_u(state);
  const TorusGrid& grid = z.grid();
  const SpectralField z_hat = to_spectral(z);
  const SpectralField zt_hat = to_spectral(zt);
  const std::vector<double> k2 = grid.squared_wavenumbers();

  double quadratic = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    quadratic += std::norm(zt_hat[i]) + (k2[i] + state.params.m) * std::norm(z_hat[i]);
  }
  double quartic = 0.0;
  for (const Complex& v : z.data()) {
    const double z2 = v.real() * v.real();
    quartic += z2 * z2;
  }
  return grid.volume() * quadratic - 0.5 * state.params.lambda * grid.cell_volume() * quartic;
}

double max_relative_energy_drift(const Trajectory& traj) {
  if (traj.states.empty()) throw ContractViolation("energy drift: empty trajectory");
  const double e0 = energy(traj.states.front());
  double worst = 0.0;
  for (const StateU& s : traj.states) worst = std::max(worst, std::abs(energy(s) - e0));
  return worst / std::abs(e0);
}

double error_norm(const StateU& a, const StateU& b, const ModelParams& params, double s) {
  if (!(a.u.grid() == b.u.grid())) throw ContractViolation("error_norm: grid mismatch");
  return sobolev_norm(as_spectral(a.u) - as_spectral(b.u), params, s);
}

std::string_view to_string(BourgainFrequency f) {
  return f == BourgainFrequency::AbsK ? "abs-k" : "bracket-k";
}

std::string_view to_string(BourgainWindow w) {
  return w == BourgainWindow::None ? "none" : "smooth-bump";
}

BourgainFrequency parse_bourgain_frequency(std::string_view text) {
  if (text == "abs-k") return BourgainFrequency::AbsK;
  if (text == "bracket-k") return BourgainFrequency::BracketK;
  throw ConfigError("unknown Bourgain frequency '" + std::string(text) + "'");
}

BourgainWindow parse_bourgain_window(std::string_view text) {
  if (text == "none") return BourgainWindow::None;
  if (text == "smooth-bump") return BourgainWindow::SmoothBump;
  throw ConfigError("unknown Bourgain window '" + std::string(text) + "'");
}

Complex d_tau(double sigma, double tau) {
  const double x = tau * sigma;
  const double half = std::sin(0.5 * x);
  return Complex{-2.0 * half * half, std::sin(x)} / tau;
}

double bourgain_time_weight(long long j, long long samples, double tau, double omega,
                            double b, bool plus_sign) {
  if (samples < 1) throw ContractViolation("bourgain_time_weight: no samples");
  long long r = j % samples;
  if (r < 0) r += samples;
  const double phase = 2.0 * std::numbers::pi * static_cast<double>(r) /
                           static_cast<double>(samples) +
                       (plus_sign ? tau * omega : -tau * omega);
  const double half = std::sin(0.5 * phase);
  const double d2 = 4.0 * half * half / (tau * tau);
  return std::pow(1.0 + d2, b);
}

double smooth_bump(long long n, long long samples) {
  if (samples < 3) return 1.0;
  const double y = 2.0 * static_cast<double>(n) / static_cast<double>(samples - 1) - 1.0;
  if (std::abs(y) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - y * y));
}

double discrete_bourgain_norm(const Trajectory& traj, const BourgainSpec& spec,
                              const ModelParams& params) {
  const auto samples = static_cast<long long>(traj.states.size());
  if (samples < 1) throw ContractViolation("discrete_bourgain_norm: empty trajectory");
  const double tau = spec.tau > 0.0 ? spec.tau : traj.tau;
  if (!(tau > 0.0)) throw ContractViolation("discrete_bourgain_norm: tau must be positive");
  params.validate();

  const TorusGrid& grid = traj.states.front().u.grid();
  std::vector<SpectralField> coeffs;
  coeffs.reserve(traj.states.size());
  for (const StateU& st : traj.states) {
    if (!(st.u.grid() == grid)) throw ContractViolation("discrete_bourgain_norm: grid mismatch");
    coeffs.push_back(as_spectral(st.u));
  }
  std::vector<double> window(static_cast<std::size_t>(samples), 1.0);
  if (spec.window == BourgainWindow::SmoothBump) {
    for (long long n = 0; n < samples; ++n) window[static_cast<std::size_t>(n)] = smooth_bump(n, samples);
  }

  const std::vector<double> space_weight = bracket_table(grid, params.m, 2.0 * spec.s);
  const std::vector<double> omega =
      spec.frequency == BourgainFrequency::AbsK
          ? [&] {
              std::vector<double> w = grid.squared_wavenumbers();
              for (double& v : w) v = std::sqrt(v);
              return w;
            }()
          : bracket_table(grid, params.m, 1.0);

  const auto& dft = detail::FftEngine::for_shape({static_cast<int>(samples)});
  std::vector<Complex> series(static_cast<std::size_t>(samples));
  const double measure = 1.0 / (static_cast<double>(samples) * tau);
  double total = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (space_weight[k] == 0.0) continue;
    for (long long n = 0; n < samples; ++n) {
      const auto un = static_cast<std::size_t>(n);
      series[un] = tau * window[un] * coeffs[un][k];
    }
    dft.forward_unscaled(series);
    double acc = 0.0;
    for (long long j = 0; j < samples; ++j) {
      const double w =
          spec.b == 0.0
              ? 1.0
              : bourgain_time_weight(j, samples, tau, omega[k], spec.b, spec.plus_sign);
      acc += w * std::norm(series[static_cast<std::size_t>(j)]);
    }
    total += space_weight[k] * measure * acc;
  }
  return std::sqrt(total);
}

OrderFit fit_order(std::span<const double> taus, std::span<const double> errors) {
  if (taus.size() != errors.size()) throw ContractViolation("fit_order: size mismatch");
  if (taus.size() < 3) throw ContractViolation("fit_order: need at least 3 points");
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!(taus[i] > 0.0)) throw ContractViolation("fit_order: taus must be positive");
    if (i > 0 && !(taus[i] < taus[i - 1])) {
      throw ContractViolation("fit_order: taus must be strictly decreasing");
    }
    if (!(errors[i] > 0.0) || !std::isfinite(errors[i])) {
      throw ContractViolation(
          "fit_order: non-positive error at tau = " + std::to_string(taus[i]) +
          " (reference solution contaminated?)");
    }
  }
  const auto n = static_cast<double>(taus.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    mx += std::log(taus[i]);
    my += std::log(errors[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double dx = std::log(taus[i]) - mx;
    const double dy = std::log(errors[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  OrderFit fit;
  fit.order = sxy / sxx;
  const double intercept = my - fit.order * mx;
  fit.constant = std::exp(intercept);
  double ss_res = 0.0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double r = std::log(errors[i]) - (intercept + fit.order * std::log(taus[i]));
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

}  // namespace kgsplit
