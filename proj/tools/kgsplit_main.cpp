// kgsplit: convergence studies for splitting schemes of the nonlinear
// Klein-Gordon equation on the torus.
//
//   kgsplit run       --config study.yaml [--out DIR] [--threads N] [--seed S] [--convention K=V,...]
//   kgsplit reference --config study.yaml [--out DIR] [--seed S] [--convention K=V,...]
//   kgsplit report    errors.csv [--plotdata FILE]
//
// Exit codes: 0 success, 1 other failure, 2 invalid config, 3 blow-up.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "kgsplit/errors.hpp"
#include "kgsplit/study.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBlowUp = 3;

struct StudyOptions {
  std::string config;
  std::string out;
  int threads = 0;
  std::optional<std::uint64_t> seed;
  std::string conventions;
};

void add_study_options(CLI::App* cmd, StudyOptions& opt) {
  cmd->add_option("--config", opt.config, "Study configuration (YAML)")->required();
  cmd->add_option("--out", opt.out, "Output directory (overrides outputs.dir)");
  cmd->add_option("--seed", opt.seed, "Random seed (overrides data.seed)");
  cmd->add_option("--convention", opt.conventions,
                  "Convention switches: dealias=on|off, zero_mode=drop-zero-mode|strict, "
                  "bourgain=abs-k|bracket-k");
}

kgsplit::StudyConfig resolve(const StudyOptions& opt) {
  auto config = kgsplit::load_config(opt.config);
  if (!opt.out.empty()) config.outputs.dir = opt.out;
  if (opt.threads > 0) config.threads = opt.threads;
  if (opt.seed) config.data.seed = *opt.seed;
  if (!opt.conventions.empty()) kgsplit::apply_conventions(config, opt.conventions);
  kgsplit::validate(config);
  return config;
}

void print_result(const kgsplit::StudyResult& r) {
  std::printf("%-14s %-24s %-14s\n", "tau", "error", "wall [s]");
  for (const auto& row : r.rows) {
    std::printf("%-14.6e %-24.16e %-14.3f\n", row.tau, row.error, row.wall_time_seconds);
  }
  if (r.fit) {
    std::printf("fitted order %.4f  constant %.4e  r^2 %.6f\n", r.fit->order, r.fit->constant,
                r.fit->r_squared);
  } else {
    std::printf("fitted order unavailable\n");
  }
  if (r.gate.evaluated) {
    std::printf("reference gate: shift %.3e vs smallest error %.3e -> %s\n", r.gate.shift,
                r.gate.smallest_error, r.gate.passed ? "passed" : "FAILED");
  }
  for (const auto& f : r.flags) std::printf("flag: %s\n", f.c_str());
}

int cmd_run(const StudyOptions& opt) {
  const auto config = resolve(opt);
  const auto result = kgsplit::run_study(config);
  kgsplit::write_outputs(result);
  print_result(result);
  std::printf("wrote %s/{%s,%s,%s}\n", config.outputs.dir.c_str(), config.outputs.csv.c_str(),
              config.outputs.plotdata.c_str(), config.outputs.manifest.c_str());
  return 0;
}

int cmd_reference(const StudyOptions& opt) {
  auto config = resolve(opt);
  config.outputs.cache_reference = true;
  const auto ref = kgsplit::run_reference(config);
  std::printf("reference %s: scheme %s, tau_ref %.6e, T = %g, %zu modes\n",
              kgsplit::hex64(kgsplit::reference_hash(config)).c_str(),
              std::string(kgsplit::to_string(config.resolved_reference_scheme())).c_str(),
              config.tau_ref, config.final_time, ref.u.size());
  return 0;
}

int cmd_report(const std::string& csv, const std::string& plotdata) {
  const auto rows = kgsplit::read_csv(csv);
  std::vector<double> taus, errors;
  for (const auto& r : rows) {
    taus.push_back(r.tau);
    errors.push_back(r.error);
  }
  const auto fit = kgsplit::fit_order(taus, errors);
  std::printf("points %zu  order %.6f  constant %.6e  r^2 %.8f\n", rows.size(), fit.order,
              fit.constant, fit.r_squared);
  if (!plotdata.empty()) {
    kgsplit::StudyResult result;
    for (const auto& r : rows) result.rows.push_back({r.tau, r.error, r.wall_time_seconds, NAN, NAN});
    result.fit = fit;
    kgsplit::emit_plotdata(result, plotdata);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Splitting-scheme convergence studies for the nonlinear Klein-Gordon equation"};
  app.require_subcommand(1);

  StudyOptions run_opt;
  auto* run = app.add_subcommand("run", "Run a tau-sweep study and write CSV, plot data and manifest");
  add_study_options(run, run_opt);
  run->add_option("--threads", run_opt.threads, "Concurrent runs in the tau sweep");

  StudyOptions ref_opt;
  auto* reference = app.add_subcommand("reference", "Build (or load) the cached reference solution");
  add_study_options(reference, ref_opt);

  std::string csv, plotdata;
  auto* report = app.add_subcommand("report", "Re-fit the convergence order from a CSV file");
  report->add_option("csv", csv, "CSV written by 'run'")->required();
  report->add_option("--plotdata", plotdata, "Also write log10 plot data here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return cmd_run(run_opt);
    if (*reference) return cmd_reference(ref_opt);
    if (*report) return cmd_report(csv, plotdata);
  } catch (const kgsplit::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const kgsplit::BlowUp& e) {
    std::cerr << "blow-up at step " << e.step() << ": " << e.what() << '\n';
    return kExitBlowUp;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
