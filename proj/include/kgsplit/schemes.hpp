#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kgsplit/field.hpp"
#include "kgsplit/model.hpp"

namespace kgsplit {

enum class SchemeKind { Lie, Strang, FilteredLie, FilteredStrang };

std::string_view to_string(SchemeKind kind);
SchemeKind parse_scheme_kind(std::string_view text);
bool is_filtered(SchemeKind kind);
/// Lie for FilteredLie, Strang for FilteredStrang, identity otherwise.
SchemeKind unfiltered_counterpart(SchemeKind kind);

struct SchemeSpec {
  SchemeKind kind = SchemeKind::Lie;
  /// Step size. Single steps accept tau < 0 (backward stepping); evolve
  /// requires tau > 0. Filtered schemes cut off at 1/|tau|.
  double tau = 0.0;
  ModelParams params;
  /// 2/3-rule truncation of the nonlinearity.
  bool dealias = false;

  void validate() const;
};

/// u = z + i <grad>^{-1} z_t together with its time and model.
struct StateU {
  SpectralField u;
  double time = 0.0;
  ModelParams params;
};

/// Exact flow of v_t = -i <grad> v over time t.
StateU linear_flow(const StateU& state, double t);

/// Exact flow of w_t = i lambda <grad>^{-1} (Re w)^3 over time t:
/// w(t) = w0 + i lambda t <grad>^{-1} (Re w0)^3. Evaluated on the physical
/// samples; the result is a physical field whose real part equals that of
/// the input exactly.
StateU nonlinear_flow(const StateU& state, double t, bool dealias = false);

StateU lie_step(const StateU& state, const SchemeSpec& spec);
StateU strang_step(const StateU& state, const SchemeSpec& spec);
/// Require a projected input (Pi_tau u = u); throws ContractViolation otherwise.
StateU filtered_lie_step(const StateU& state, const SchemeSpec& spec);
StateU filtered_strang_step(const StateU& state, const SchemeSpec& spec);

/// Dispatches on spec.kind.
StateU step(const StateU& state, const SchemeSpec& spec);

/// Precomputed one-step map for a fixed grid and scheme, advancing raw
/// spectral coefficients in place. Owns scratch storage: one instance per
/// thread.
class Stepper {
 public:
  Stepper(const TorusGrid& grid, const SchemeSpec& spec);

  void advance(std::vector<Complex>& coeffs);

  const SchemeSpec& spec() const noexcept { return spec_; }
  /// Pi_tau mask (all ones for unfiltered schemes).
  const std::vector<double>& projector() const noexcept { return projector_; }
  /// True when every coefficient outside the projector vanishes.
  bool is_projected(std::span<const Complex> coeffs) const;

 private:
  TorusGrid grid_;
  SchemeSpec spec_;
  std::vector<Complex> phase_full_;
  std::vector<Complex> phase_half_;
  std::vector<double> inv_bracket_;
  std::vector<double> projector_;
  std::vector<double> dealias_;
  std::vector<Complex> scratch_;
};

/// Sampled time-discrete evolution {u_n}.
struct Trajectory {
  std::vector<StateU> states;
  /// Time between consecutive samples (sample_every * tau).
  double tau = 0.0;
  SchemeSpec scheme;
  std::string provenance;
};

/// Iterates the selected stepper n_steps times from u0, recording u0 and
/// every sample_every-th state. n_steps must be a multiple of sample_every.
/// Throws BlowUp with the offending step index on a non-finite state.
Trajectory evolve(const StateU& u0, const SchemeSpec& spec, std::int64_t n_steps,
                  std::int64_t sample_every = 1);

/// Final state only; same stepping as evolve.
StateU evolve_final(const StateU& u0, const SchemeSpec& spec, std::int64_t n_steps);

/// True iff all coefficients are finite.
bool all_finite(std::span<const Complex> data);

}  // namespace kgsplit
