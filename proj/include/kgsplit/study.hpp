#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kgsplit/diagnostics.hpp"
#include "kgsplit/model.hpp"
#include "kgsplit/rough_data.hpp"
#include "kgsplit/schemes.hpp"

namespace kgsplit {

std::string_view software_version();

struct DataConfig {
  double s = 1.0;
  double epsilon = 0.0;
  double norm_index = 0.5;
  std::uint64_t seed = 1;
};

struct OutputConfig {
  std::string dir = "out";
  std::string csv = "errors.csv";
  std::string plotdata = "errors_plot.dat";
  std::string manifest = "manifest.txt";
  bool cache_reference = true;
};

/// A tau-sweep convergence study.
struct StudyConfig {
  ModelParams model;
  std::vector<int> grid{256, 256};
  DataConfig data;
  SchemeKind scheme = SchemeKind::Lie;
  double error_index = 0.5;
  double final_time = 1.0;
  /// Strictly decreasing step sizes under test.
  std::vector<double> tau_list;
  double tau_ref = 0x1.0p-12;
  /// Defaults to the unfiltered counterpart of scheme.
  std::optional<SchemeKind> reference_scheme;
  /// Also evolve with tau_ref / 2 and compare against the measured errors.
  bool reference_gate = false;
  bool dealias = false;
  BourgainFrequency bourgain_frequency = BourgainFrequency::AbsK;
  int threads = 1;
  OutputConfig outputs;

  SchemeKind resolved_reference_scheme() const {
    return reference_scheme.value_or(unfiltered_counterpart(scheme));
  }
};

/// Parses the YAML study file. Throws ConfigError on syntax errors, unknown
/// keys or invalid values.
StudyConfig load_config(const std::filesystem::path& path);
StudyConfig parse_config(const std::string& yaml_text);

/// Throws ConfigError unless the config is runnable.
void validate(const StudyConfig& config);

/// Applies "key=value[,key=value...]" convention switches
/// (dealias=on|off, zero_mode=drop-zero-mode|strict, bourgain=abs-k|bracket-k).
void apply_conventions(StudyConfig& config, const std::string& switches);

/// Deterministic "key = value" rendering of every config field.
std::string canonical_text(const StudyConfig& config);
/// FNV-1a 64 of canonical_text.
std::uint64_t config_hash(const StudyConfig& config);
/// Hash of the fields that determine the reference solution.
std::uint64_t reference_hash(const StudyConfig& config);
std::string hex64(std::uint64_t value);

RoughDataSpec data_spec(const StudyConfig& config);
StateU initial_state(const StudyConfig& config);

/// Number of steps of size tau reaching final_time; throws ConfigError when
/// tau does not divide it.
std::int64_t steps_for(double final_time, double tau);

/// Fine-step solution at final_time with the reference scheme. Results are
/// cached in memory, and on disk under outputs.dir when cache_reference is
/// set, keyed by reference_hash.
StateU run_reference(const StudyConfig& config);
StateU run_reference(const StudyConfig& config, double tau_ref);

/// Drops the in-memory reference cache (the disk cache is kept).
void clear_reference_memory_cache();

struct ReferenceGate {
  bool evaluated = false;
  /// ||ref(tau_ref) - ref(tau_ref / 2)|| in the error norm.
  double shift = 0.0;
  double smallest_error = 0.0;
  bool passed = false;
};

struct StudyRow {
  double tau = 0.0;
  double error = 0.0;
  double wall_time_seconds = 0.0;
  /// ||(I - Pi_tau) ref||; NaN for unfiltered schemes.
  double projection_loss = 0.0;
  /// |E(T) - E(0)| / |E(0)| of the run.
  double energy_drift = 0.0;
};

struct StudyResult {
  StudyConfig config;
  std::vector<StudyRow> rows;
  std::optional<OrderFit> fit;
  std::vector<std::string> flags;
  ReferenceGate gate;
  std::vector<std::pair<std::string, std::string>> manifest;

  bool has_flag(const std::string& flag) const;
};

inline constexpr const char* kFlagIrregular = "irregular convergence";
inline constexpr const char* kFlagNoiseFloor = "below noise floor";
inline constexpr const char* kFlagGateFailed = "reference gate failed";

/// Errors below this are treated as roundoff.
inline constexpr double kNoiseFloor = 1e-10;

/// Runs the sweep (concurrently over tau with config.threads workers) and
/// fits the order. Does not write files.
StudyResult run_study(const StudyConfig& config);

/// Header "tau,error,wall_time_seconds", values as %.16e.
void emit_csv(const StudyResult& result, const std::filesystem::path& path);
/// log10 columns and the fitted line.
void emit_plotdata(const StudyResult& result, const std::filesystem::path& path);
void emit_manifest(const StudyResult& result, const std::filesystem::path& path);
/// All three files under config.outputs.dir.
void write_outputs(const StudyResult& result);

struct CsvRow {
  double tau = 0.0;
  double error = 0.0;
  double wall_time_seconds = 0.0;
};

std::vector<CsvRow> read_csv(const std::filesystem::path& path);

}  // namespace kgsplit
