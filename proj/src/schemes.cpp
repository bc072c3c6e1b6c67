#include "kgsplit/schemes.hpp"

#include <cmath>
#include <string>

#include "fft.hpp"
#include "kgsplit/errors.hpp"
#include "kgsplit/operators.hpp"

namespace kgsplit {

namespace {

// Plain complex product; std::complex operator* adds C99 Annex G NaN
// recovery that is not needed here and costs a libcall per element.
inline Complex cmul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

void require_kind(const SchemeSpec& spec, SchemeKind kind, const char* who) {
  if (spec.kind != kind) {
    throw ContractViolation(std::string(who) + ": scheme kind is " +
                            std::string(to_string(spec.kind)));
  }
}

void require_same_model(const StateU& state, const SchemeSpec& spec) {
  if (state.params.m != spec.params.m) {
    throw ContractViolation("state and scheme disagree on the mass m");
  }
}

}  // namespace

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::Lie:
      return "lie";
    case SchemeKind::Strang:
      return "strang";
    case SchemeKind::FilteredLie:
      return "filtered-lie";
    case SchemeKind::FilteredStrang:
      return "filtered-strang";
  }
  return "unknown";
}

SchemeKind parse_scheme_kind(std::string_view text) {
  if (text == "lie") return SchemeKind::Lie;
  if (text == "strang") return SchemeKind::Strang;
  if (text == "filtered-lie") return SchemeKind::FilteredLie;
  if (text == "filtered-strang") return SchemeKind::FilteredStrang;
  throw ConfigError("unknown scheme '" + std::string(text) +
                    "' (expected lie, strang, filtered-lie or filtered-strang)");
}

bool is_filtered(SchemeKind kind) {
  return kind == SchemeKind::FilteredLie || kind == SchemeKind::FilteredStrang;
}

SchemeKind unfiltered_counterpart(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::FilteredLie:
      return SchemeKind::Lie;
    case SchemeKind::FilteredStrang:
      return SchemeKind::Strang;
    default:
      return kind;
  }
}

void SchemeSpec::validate() const {
  params.validate();
  if (!std::isfinite(tau) || tau == 0.0) {
    throw ContractViolation("SchemeSpec: tau must be finite and nonzero");
  }
}

StateU linear_flow(const StateU& state, double t) {
  return {apply_linear_phase(state.u, state.params, t), state.time + t, state.params};
}

StateU nonlinear_flow(const StateU& state, double t, bool dealias) {
  if (state.params.lambda == 0.0 || t == 0.0) return {state.u, state.time + t, state.params};
  // Computed on the samples with a real increment, so Re w is untouched bit for bit.
  const SpectralField w0 = as_physical(state.u);
  const SpectralField kick =
      to_physical(apply_bracket(to_spectral(real_cube(w0, dealias)), state.params, -1.0));
  const double scale = state.params.lambda * t;
  std::vector<Complex> out(w0.data().begin(), w0.data().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += Complex{0.0, scale * kick[i].real()};
  return {SpectralField(w0.grid(), Representation::Physical, std::move(out)), state.time + t,
          state.params};
}

Stepper::Stepper(const TorusGrid& grid, const SchemeSpec& spec)
    : grid_(grid), spec_(spec), scratch_(grid.size()) {
  spec_.validate();
  const std::vector<double> omega = bracket_table(grid, spec.params.m, 1.0);
  inv_bracket_ = bracket_table(grid, spec.params.m, -1.0);
  phase_full_.resize(grid.size());
  phase_half_.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    phase_full_[i] = std::polar(1.0, -spec.tau * omega[i]);
    phase_half_[i] = std::polar(1.0, -0.5 * spec.tau * omega[i]);
  }
  projector_ = is_filtered(spec.kind) ? projector_mask(grid, std::abs(spec.tau))
                                      : std::vector<double>(grid.size(), 1.0);
  dealias_ = spec.dealias ? dealias_mask(grid) : std::vector<double>(grid.size(), 1.0);
}

bool Stepper::is_projected(std::span<const Complex> coeffs) const {
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (projector_[i] == 0.0 && coeffs[i] != Complex{}) return false;
  }
  return true;
}

void Stepper::advance(std::vector<Complex>& coeffs) {
  if (coeffs.size() != grid_.size()) throw ContractViolation("Stepper: size mismatch");
  const bool strang =
      spec_.kind == SchemeKind::Strang || spec_.kind == SchemeKind::FilteredStrang;
  const std::size_t n = coeffs.size();
  const double lambda = spec_.params.lambda;

  if (lambda == 0.0) {
    for (std::size_t i = 0; i < n; ++i) coeffs[i] = cmul(phase_full_[i], coeffs[i]);
    return;
  }

  // Input of the nonlinearity: Pi (e^{-i tau <grad>/2})? u_n.
  for (std::size_t i = 0; i < n; ++i) {
    const Complex c = strang ? cmul(phase_half_[i], coeffs[i]) : coeffs[i];
    scratch_[i] = c * (projector_[i] * dealias_[i]);
  }
  const auto& fft = detail::FftEngine::for_shape(grid_.mode_counts());
  fft.backward(scratch_);
  for (auto& v : scratch_) {
    const double re = v.real();
    v = Complex{re * re * re, 0.0};
  }
  fft.forward(scratch_);

  if (spec_.params.m == 0.0 && spec_.params.zero_mode == ZeroModePolicy::Strict &&
      scratch_[0] != Complex{}) {
    throw SingularOperator("nonlinear kick: <grad>^{-1} of a nonzero mean at m = 0");
  }

  const double kick = lambda * spec_.tau;
  for (std::size_t i = 0; i < n; ++i) {
    // i * lambda * tau * <k>^{-1} * Pi (Re .)^3
    const double w = kick * inv_bracket_[i] * projector_[i] * dealias_[i];
    const Complex c = scratch_[i];
    const Complex ikick{-w * c.imag(), w * c.real()};
    if (strang) {
      coeffs[i] = cmul(phase_full_[i], coeffs[i]) + cmul(phase_half_[i], ikick);
    } else {
      coeffs[i] = cmul(phase_full_[i], coeffs[i] + ikick);
    }
  }
}

namespace {

StateU step_with(const StateU& state, const SchemeSpec& spec) {
  require_same_model(state, spec);
  Stepper stepper(state.u.grid(), spec);
  std::vector<Complex> coeffs = std::move(as_spectral(state.u)).release();
  if (!stepper.is_projected(coeffs)) {
    throw ContractViolation("filtered step: input is not in the range of Pi_tau");
  }
  stepper.advance(coeffs);
  return {SpectralField(state.u.grid(), Representation::Spectral, std::move(coeffs)),
          state.time + spec.tau, state.params};
}

}  // namespace

StateU lie_step(const StateU& state, const SchemeSpec& spec) {
  require_kind(spec, SchemeKind::Lie, "lie_step");
  return step_with(state, spec);
}

StateU strang_step(const StateU& state, const SchemeSpec& spec) {
  require_kind(spec, SchemeKind::Strang, "strang_step");
  return step_with(state, spec);
}

StateU filtered_lie_step(const StateU& state, const SchemeSpec& spec) {
  require_kind(spec, SchemeKind::FilteredLie, "filtered_lie_step");
  return step_with(state, spec);
}

StateU filtered_strang_step(const StateU& state, const SchemeSpec& spec) {
  require_kind(spec, SchemeKind::FilteredStrang, "filtered_strang_step");
  return step_with(state, spec);
}

StateU step(const StateU& state, const SchemeSpec& spec) { return step_with(state, spec); }

bool all_finite(std::span<const Complex> data) {
  for (const Complex& c : data) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

namespace {

template <typename OnSample>
void run_steps(const StateU& u0, const SchemeSpec& spec, std::int64_t n_steps,
               std::int64_t sample_every, OnSample&& on_sample) {
  if (n_steps < 0) throw ContractViolation("evolve: n_steps must be >= 0");
  if (!(spec.tau > 0.0)) throw ContractViolation("evolve: tau must be positive");
  if (sample_every < 1) throw ContractViolation("evolve: sample_every must be >= 1");
  if (n_steps % sample_every != 0) {
    throw ContractViolation("evolve: n_steps must be a multiple of sample_every");
  }
  require_same_model(u0, spec);
  Stepper stepper(u0.u.grid(), spec);
  std::vector<Complex> coeffs = std::move(as_spectral(u0.u)).release();
  if (!stepper.is_projected(coeffs)) {
    throw ContractViolation("evolve: filtered scheme needs a projected initial state");
  }
  if (!all_finite(coeffs)) throw BlowUp(0, "evolve: initial state is not finite");
  on_sample(std::int64_t{0}, coeffs);
  for (std::int64_t n = 1; n <= n_steps; ++n) {
    stepper.advance(coeffs);
    if (!all_finite(coeffs)) {
      throw BlowUp(n, "evolve: non-finite state at step " + std::to_string(n) +
                          " (t = " + std::to_string(u0.time + n * spec.tau) + ")");
    }
    if (n % sample_every == 0) on_sample(n, coeffs);
  }
}

}  // namespace

Trajectory evolve(const StateU& u0, const SchemeSpec& spec, std::int64_t n_steps,
                  std::int64_t sample_every) {
  Trajectory traj;
  traj.tau = static_cast<double>(sample_every) * spec.tau;
  traj.scheme = spec;
  run_steps(u0, spec, n_steps, sample_every,
            [&](std::int64_t n, const std::vector<Complex>& coeffs) {
              traj.states.push_back(
                  {SpectralField(u0.u.grid(), Representation::Spectral, coeffs),
                   u0.time + static_cast<double>(n) * spec.tau, u0.params});
            });
  return traj;
}

StateU evolve_final(const StateU& u0, const SchemeSpec& spec, std::int64_t n_steps) {
  std::vector<Complex> last;
  const std::int64_t every = n_steps > 0 ? n_steps : 1;
  run_steps(u0, spec, n_steps, every,
            [&](std::int64_t, const std::vector<Complex>& coeffs) { last = coeffs; });
  return {SpectralField(u0.u.grid(), Representation::Spectral, std::move(last)),
          u0.time + static_cast<double>(n_steps) * spec.tau, u0.params};
}

}  // namespace kgsplit
