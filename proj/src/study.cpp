#include "kgsplit/study.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "kgsplit/errors.hpp"
#include "kgsplit/operators.hpp"

#ifndef KGSPLIT_VERSION
#define KGSPLIT_VERSION "0.0.0"
#endif

namespace kgsplit {

std::string_view software_version() { return KGSPLIT_VERSION; }

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sci17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

// ---------------------------------------------------------------- parsing

void reject_unknown(const YAML::Node& node, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  if (!node.IsMap()) throw ConfigError(where + ": expected a mapping");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!keys.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

// Accepts plain numbers and "2^-k" / "2^k" shorthands.
double parse_real(const YAML::Node& node, const std::string& where) {
  const auto text = node.as<std::string>();
  const auto caret = text.find('^');
  try {
    if (caret != std::string::npos) {
      const double base = std::stod(text.substr(0, caret));
      const double exponent = std::stod(text.substr(caret + 1));
      return std::pow(base, exponent);
    }
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": '" + text + "' is not a number");
  }
}

template <typename T>
T get_as(const YAML::Node& node, const std::string& where) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(where + ": bad value '" + node.as<std::string>("?") + "'");
  }
}

StudyConfig from_yaml(const YAML::Node& root) {
  StudyConfig cfg;
  reject_unknown(root, "config",
                 {"model", "grid", "data", "scheme", "error_index", "final_time", "tau_list",
                  "tau_ref", "reference_scheme", "reference_gate", "conventions", "threads",
                  "outputs"});
  if (const auto n = root["model"]) {
    reject_unknown(n, "model", {"m", "lambda", "zero_mode"});
    if (n["m"]) cfg.model.m = parse_real(n["m"], "model.m");
    if (n["lambda"]) cfg.model.lambda = parse_real(n["lambda"], "model.lambda");
    if (n["zero_mode"]) {
      cfg.model.zero_mode = parse_zero_mode_policy(get_as<std::string>(n["zero_mode"], "model.zero_mode"));
    }
  }
  if (const auto n = root["grid"]) {
    reject_unknown(n, "grid", {"modes"});
    if (n["modes"]) cfg.grid = get_as<std::vector<int>>(n["modes"], "grid.modes");
  }
  if (const auto n = root["data"]) {
    reject_unknown(n, "data", {"s", "epsilon", "norm_index", "seed"});
    if (n["s"]) cfg.data.s = parse_real(n["s"], "data.s");
    if (n["epsilon"]) cfg.data.epsilon = parse_real(n["epsilon"], "data.epsilon");
    if (n["norm_index"]) cfg.data.norm_index = parse_real(n["norm_index"], "data.norm_index");
    if (n["seed"]) cfg.data.seed = get_as<std::uint64_t>(n["seed"], "data.seed");
  }
  if (root["scheme"]) cfg.scheme = parse_scheme_kind(get_as<std::string>(root["scheme"], "scheme"));
  if (root["error_index"]) cfg.error_index = parse_real(root["error_index"], "error_index");
  if (root["final_time"]) cfg.final_time = parse_real(root["final_time"], "final_time");
  if (const auto n = root["tau_list"]) {
    if (!n.IsSequence()) throw ConfigError("tau_list: expected a list");
    for (std::size_t i = 0; i < n.size(); ++i) cfg.tau_list.push_back(parse_real(n[i], "tau_list"));
  }
  if (root["tau_ref"]) cfg.tau_ref = parse_real(root["tau_ref"], "tau_ref");
  if (root["reference_scheme"]) {
    cfg.reference_scheme =
        parse_scheme_kind(get_as<std::string>(root["reference_scheme"], "reference_scheme"));
  }
  if (root["reference_gate"]) cfg.reference_gate = get_as<bool>(root["reference_gate"], "reference_gate");
  if (const auto n = root["conventions"]) {
    reject_unknown(n, "conventions", {"dealias", "bourgain_frequency"});
    if (n["dealias"]) cfg.dealias = get_as<bool>(n["dealias"], "conventions.dealias");
    if (n["bourgain_frequency"]) {
      cfg.bourgain_frequency = parse_bourgain_frequency(
          get_as<std::string>(n["bourgain_frequency"], "conventions.bourgain_frequency"));
    }
  }
  if (root["threads"]) cfg.threads = get_as<int>(root["threads"], "threads");
  if (const auto n = root["outputs"]) {
    reject_unknown(n, "outputs", {"dir", "csv", "plotdata", "manifest", "cache_reference"});
    if (n["dir"]) cfg.outputs.dir = get_as<std::string>(n["dir"], "outputs.dir");
    if (n["csv"]) cfg.outputs.csv = get_as<std::string>(n["csv"], "outputs.csv");
    if (n["plotdata"]) cfg.outputs.plotdata = get_as<std::string>(n["plotdata"], "outputs.plotdata");
    if (n["manifest"]) cfg.outputs.manifest = get_as<std::string>(n["manifest"], "outputs.manifest");
    if (n["cache_reference"]) {
      cfg.outputs.cache_reference = get_as<bool>(n["cache_reference"], "outputs.cache_reference");
    }
  }
  return cfg;
}

bool divides(double final_time, double tau) {
  const double n = std::round(final_time / tau);
  return n >= 1.0 && std::abs(n * tau - final_time) <= 1e-12 * final_time;
}

}  // namespace

StudyConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config: YAML error: ") + e.what());
  }
  StudyConfig cfg = from_yaml(root);
  validate(cfg);
  return cfg;
}

StudyConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate(const StudyConfig& config) {
  try {
    config.model.validate();
    TorusGrid grid(config.grid);
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
  if (!(config.final_time > 0.0)) throw ConfigError("final_time must be positive");
  if (config.tau_list.empty()) throw ConfigError("tau_list must not be empty");
  for (std::size_t i = 0; i < config.tau_list.size(); ++i) {
    const double tau = config.tau_list[i];
    if (!(tau > 0.0)) throw ConfigError("tau_list entries must be positive");
    if (i > 0 && !(tau < config.tau_list[i - 1])) {
      throw ConfigError("tau_list must be strictly decreasing");
    }
    if (!divides(config.final_time, tau)) {
      throw ConfigError("tau = " + fmt17(tau) + " does not divide final_time");
    }
  }
  if (!(config.tau_ref > 0.0) || !divides(config.final_time, config.tau_ref)) {
    throw ConfigError("tau_ref must be positive and divide final_time");
  }
  if (!(config.tau_ref < config.tau_list.back() / 4.0)) {
    throw ConfigError("tau_ref must be smaller than min(tau_list) / 4");
  }
  if (config.threads < 1) throw ConfigError("threads must be >= 1");
  if (!std::isfinite(config.error_index) || !std::isfinite(config.data.s) ||
      !std::isfinite(config.data.norm_index) || !(config.data.epsilon >= 0.0)) {
    throw ConfigError("data.s, data.norm_index and error_index must be finite, epsilon >= 0");
  }
}

void apply_conventions(StudyConfig& config, const std::string& switches) {
  std::stringstream ss(switches);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("convention '" + item + "' needs key=value");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    if (key == "dealias") {
      if (value != "on" && value != "off") throw ConfigError("dealias must be on or off");
      config.dealias = value == "on";
    } else if (key == "zero_mode") {
      config.model.zero_mode = parse_zero_mode_policy(value);
    } else if (key == "bourgain") {
      config.bourgain_frequency = parse_bourgain_frequency(value);
    } else {
      throw ConfigError("unknown convention '" + key + "'");
    }
  }
}

namespace {

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

std::string join_reals(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + fmt17(v[i]);
  return out;
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::pair<std::string, std::string>> config_fields(const StudyConfig& c) {
  return {
      {"model.m", fmt17(c.model.m)},
      {"model.lambda", fmt17(c.model.lambda)},
      {"model.zero_mode", std::string(to_string(c.model.zero_mode))},
      {"grid.modes", join_ints(c.grid)},
      {"data.s", fmt17(c.data.s)},
      {"data.epsilon", fmt17(c.data.epsilon)},
      {"data.norm_index", fmt17(c.data.norm_index)},
      {"data.seed", std::to_string(c.data.seed)},
      {"scheme", std::string(to_string(c.scheme))},
      {"error_index", fmt17(c.error_index)},
      {"final_time", fmt17(c.final_time)},
      {"tau_list", join_reals(c.tau_list)},
      {"tau_ref", fmt17(c.tau_ref)},
      {"reference_scheme", std::string(to_string(c.resolved_reference_scheme()))},
      {"reference_gate", c.reference_gate ? "true" : "false"},
      {"conventions.dealias", c.dealias ? "true" : "false"},
      {"conventions.bourgain_frequency", std::string(to_string(c.bourgain_frequency))},
  };
}

}  // namespace

std::string canonical_text(const StudyConfig& config) {
  std::string out;
  for (const auto& [k, v] : config_fields(config)) out += k + " = " + v + "\n";
  return out;
}

std::uint64_t config_hash(const StudyConfig& config) { return fnv1a(canonical_text(config)); }

namespace {

std::uint64_t reference_hash_for(const StudyConfig& c, double tau_ref) {
  std::string key = "version = " + std::string(software_version()) + "\n";
  for (const auto& [k, v] : config_fields(c)) {
    if (k == "scheme" || k == "error_index" || k == "tau_list" || k == "tau_ref" ||
        k == "reference_gate" || k == "conventions.bourgain_frequency") {
      continue;
    }
    key += k + " = " + v + "\n";
  }
  key += "tau_ref = " + fmt17(tau_ref) + "\n";
  return fnv1a(key);
}

}  // namespace

std::uint64_t reference_hash(const StudyConfig& config) {
  return reference_hash_for(config, config.tau_ref);
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

RoughDataSpec data_spec(const StudyConfig& config) {
  RoughDataSpec spec;
  spec.s = config.data.s;
  spec.epsilon = config.data.epsilon;
  spec.norm_index = config.data.norm_index;
  spec.seed = config.data.seed;
  spec.grid = TorusGrid(config.grid);
  spec.params = config.model;
  return spec;
}

StateU initial_state(const StudyConfig& config) { return generate(data_spec(config)); }

std::int64_t steps_for(double final_time, double tau) {
  if (!(tau > 0.0) || !divides(final_time, tau)) {
    throw ConfigError("tau = " + fmt17(tau) + " does not divide final_time = " + fmt17(final_time));
  }
  return static_cast<std::int64_t>(std::llround(final_time / tau));
}

// ------------------------------------------------------------- reference

namespace {

constexpr char kRefMagic[8] = {'K', 'G', 'S', 'R', 'E', 'F', '0', '1'};

std::mutex& reference_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::uint64_t, std::vector<Complex>>& reference_memory() {
  static std::map<std::uint64_t, std::vector<Complex>> cache;
  return cache;
}

std::filesystem::path reference_path(const StudyConfig& c, std::uint64_t hash) {
  return std::filesystem::path(c.outputs.dir) / ("reference-" + hex64(hash) + ".bin");
}

std::optional<std::vector<Complex>> load_reference(const std::filesystem::path& path,
                                                   std::uint64_t hash, std::size_t size) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[8];
  std::uint64_t stored_hash = 0, count = 0;
  in.read(magic, 8);
  in.read(reinterpret_cast<char*>(&stored_hash), sizeof stored_hash);
  in.read(reinterpret_cast<char*>(&count), sizeof count);
  if (!in || !std::equal(magic, magic + 8, kRefMagic) || stored_hash != hash || count != size) {
    return std::nullopt;
  }
  std::vector<Complex> data(size);
  in.read(reinterpret_cast<char*>(data.data()),
          static_cast<std::streamsize>(size * sizeof(Complex)));
  if (!in) return std::nullopt;
  return data;
}

void store_reference(const std::filesystem::path& path, std::uint64_t hash,
                     const std::vector<Complex>& data) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot write reference cache " + tmp);
    const std::uint64_t count = data.size();
    out.write(kRefMagic, 8);
    out.write(reinterpret_cast<const char*>(&hash), sizeof hash);
    out.write(reinterpret_cast<const char*>(&count), sizeof count);
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size() * sizeof(Complex)));
    if (!out) throw IoError("failed writing reference cache " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

void clear_reference_memory_cache() {
  std::lock_guard lock(reference_mutex());
  reference_memory().clear();
}

StateU run_reference(const StudyConfig& config) { return run_reference(config, config.tau_ref); }

StateU run_reference(const StudyConfig& config, double tau_ref) {
  const std::uint64_t hash = reference_hash_for(config, tau_ref);
  const TorusGrid grid(config.grid);
  const auto wrap = [&](std::vector<Complex> data) {
    return StateU{SpectralField(grid, Representation::Spectral, std::move(data)),
                  config.final_time, config.model};
  };
  {
    std::lock_guard lock(reference_mutex());
    if (auto it = reference_memory().find(hash); it != reference_memory().end()) {
      return wrap(it->second);
    }
  }
  const auto path = reference_path(config, hash);
  if (config.outputs.cache_reference) {
    if (auto data = load_reference(path, hash, grid.size())) {
      std::lock_guard lock(reference_mutex());
      reference_memory().emplace(hash, *data);
      return wrap(std::move(*data));
    }
  }

  SchemeSpec spec{config.resolved_reference_scheme(), tau_ref, config.model, config.dealias};
  StateU u0 = initial_state(config);
  if (is_filtered(spec.kind)) u0.u = projector(u0.u, tau_ref);
  const StateU ref = evolve_final(u0, spec, steps_for(config.final_time, tau_ref));
  std::vector<Complex> data(ref.u.data().begin(), ref.u.data().end());
  if (config.outputs.cache_reference) store_reference(path, hash, data);
  std::lock_guard lock(reference_mutex());
  reference_memory().emplace(hash, data);
  return wrap(std::move(data));
}

// ----------------------------------------------------------------- study

bool StudyResult::has_flag(const std::string& flag) const {
  return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

namespace {

StudyRow run_one(const StudyConfig& config, const StateU& u0, const StateU& ref, double tau) {
  const auto start = std::chrono::steady_clock::now();
  SchemeSpec spec{config.scheme, tau, config.model, config.dealias};
  StateU initial = u0;
  StudyRow row;
  row.tau = tau;
  row.projection_loss = std::numeric_limits<double>::quiet_NaN();
  if (is_filtered(config.scheme)) {
    initial.u = projector(u0.u, tau);
    row.projection_loss =
        sobolev_norm(as_spectral(ref.u) - projector(ref.u, tau), config.model, config.error_index);
  }
  const StateU final_state = evolve_final(initial, spec, steps_for(config.final_time, tau));
  row.error = error_norm(final_state, ref, config.model, config.error_index);
  const double e0 = energy(initial);
  row.energy_drift = std::abs(energy(final_state) - e0) / std::abs(e0);
  row.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::vector<std::pair<std::string, std::string>> build_manifest(const StudyResult& r) {
  const StudyConfig& c = r.config;
  std::vector<std::pair<std::string, std::string>> m;
  m.emplace_back("software_version", std::string(software_version()));
  m.emplace_back("config_hash", hex64(config_hash(c)));
  m.emplace_back("reference_hash", hex64(reference_hash(c)));
  for (auto& kv : config_fields(c)) m.push_back(std::move(kv));
  m.emplace_back("rng", std::string(kRngName));
  m.emplace_back("rng.traversal", "lexicographic k_1..k_d ascending, k_d fastest; f_k then g_k");
  m.emplace_back("data.amplitude", "<k>^(-s-d/2-epsilon) * (f_k + i g_k), f,g ~ U[0,1)");
  m.emplace_back("data.normalization", "||u0||_{H^norm_index} = 1");
  m.emplace_back("transform.convention", "u(x) = sum_k u_k exp(i<k,x>), u_k = DFT / N");
  m.emplace_back("norm.convention", "(sum_k (m+|k|^2)^s |u_k|^2)^(1/2), no (2pi)^d factor");
  m.emplace_back("energy.convention", "int over [0,2pi)^d, trapezoidal quartic term");
  m.emplace_back("threads", std::to_string(c.threads));
  const SchemeKind ref_kind = c.resolved_reference_scheme();
  if (is_filtered(c.scheme) != is_filtered(ref_kind)) {
    m.emplace_back("projector.discrepancy",
                   "filtered scheme measured against an unfiltered reference; per-row "
                   "projection_loss = ||(I - Pi_tau) ref||_{H^error_index}");
  } else if (is_filtered(ref_kind)) {
    m.emplace_back("projector.discrepancy",
                   "reference is filtered with Pi_{tau_ref}; it differs from the projectors "
                   "of the runs under test");
  }
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const std::string p = "row." + std::to_string(i) + ".";
    m.emplace_back(p + "tau", sci17(r.rows[i].tau));
    m.emplace_back(p + "error", sci17(r.rows[i].error));
    m.emplace_back(p + "energy_drift", sci17(r.rows[i].energy_drift));
    if (!std::isnan(r.rows[i].projection_loss)) {
      m.emplace_back(p + "projection_loss", sci17(r.rows[i].projection_loss));
    }
  }
  if (r.fit) {
    m.emplace_back("fit.order", fmt17(r.fit->order));
    m.emplace_back("fit.constant", fmt17(r.fit->constant));
    m.emplace_back("fit.r_squared", fmt17(r.fit->r_squared));
  } else {
    m.emplace_back("fit.order", "unavailable");
  }
  if (r.gate.evaluated) {
    m.emplace_back("gate.shift", sci17(r.gate.shift));
    m.emplace_back("gate.smallest_error", sci17(r.gate.smallest_error));
    m.emplace_back("gate.passed", r.gate.passed ? "true" : "false");
  }
  std::string flags;
  for (const auto& f : r.flags) flags += (flags.empty() ? "" : "; ") + f;
  m.emplace_back("flags", flags.empty() ? "none" : flags);
  return m;
}

}  // namespace

StudyResult run_study(const StudyConfig& config) {
  validate(config);
  StudyResult result;
  result.config = config;
  const StateU u0 = initial_state(config);
  const StateU ref = run_reference(config);

  const std::size_t count = config.tau_list.size();
  result.rows.resize(count);
  std::vector<std::exception_ptr> failures(count);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        result.rows[i] = run_one(config, u0, ref, config.tau_list[i]);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(config.threads), count);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  std::vector<double> taus, errors;
  bool monotone = true, below_floor = true;
  for (std::size_t i = 0; i < count; ++i) {
    taus.push_back(result.rows[i].tau);
    errors.push_back(result.rows[i].error);
    below_floor = below_floor && result.rows[i].error < kNoiseFloor;
    if (i > 0 && !(result.rows[i].error < result.rows[i - 1].error)) monotone = false;
  }
  if (below_floor) {
    result.flags.emplace_back(kFlagNoiseFloor);
  } else if (!monotone) {
    result.flags.emplace_back(kFlagIrregular);
  }
  if (count >= 3) {
    try {
      result.fit = fit_order(taus, errors);
    } catch (const ContractViolation&) {
      result.fit.reset();
    }
  }

  if (config.reference_gate) {
    const StateU finer = run_reference(config, 0.5 * config.tau_ref);
    result.gate.evaluated = true;
    result.gate.shift = error_norm(ref, finer, config.model, config.error_index);
    result.gate.smallest_error = *std::min_element(errors.begin(), errors.end());
    result.gate.passed = result.gate.shift < 0.1 * result.gate.smallest_error;
    if (!result.gate.passed) result.flags.emplace_back(kFlagGateFailed);
  }
  result.manifest = build_manifest(result);
  return result;
}

// ---------------------------------------------------------------- output

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

void emit_csv(const StudyResult& result, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << "tau,error,wall_time_seconds\n";
  for (const auto& row : result.rows) {
    out << sci17(row.tau) << ',' << sci17(row.error) << ',' << sci17(row.wall_time_seconds)
        << '\n';
  }
  finish(out, path);
}

void emit_plotdata(const StudyResult& result, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << "# log10_tau log10_error log10_fit\n";
  if (result.fit) {
    out << "# fit: error = " << fmt17(result.fit->constant) << " * tau^"
        << fmt17(result.fit->order) << "  (r^2 = " << fmt17(result.fit->r_squared) << ")\n";
  }
  for (const auto& row : result.rows) {
    const double lt = std::log10(row.tau);
    const double le = row.error > 0.0 ? std::log10(row.error) : -std::numeric_limits<double>::infinity();
    const double lf = result.fit ? std::log10(result.fit->constant) + result.fit->order * lt
                                 : std::numeric_limits<double>::quiet_NaN();
    out << sci17(lt) << ' ' << sci17(le) << ' ' << sci17(lf) << '\n';
  }
  finish(out, path);
}

void emit_manifest(const StudyResult& result, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  for (const auto& [k, v] : result.manifest) out << k << " = " << v << '\n';
  finish(out, path);
}

void write_outputs(const StudyResult& result) {
  const std::filesystem::path dir(result.config.outputs.dir);
  emit_csv(result, dir / result.config.outputs.csv);
  emit_plotdata(result, dir / result.config.outputs.plotdata);
  emit_manifest(result, dir / result.config.outputs.manifest);
}

std::vector<CsvRow> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "tau,error,wall_time_seconds") {
    throw IoError(path.string() + ": missing header 'tau,error,wall_time_seconds'");
  }
  std::vector<CsvRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    CsvRow row;
    char* end = nullptr;
    const char* p = line.c_str();
    row.tau = std::strtod(p, &end);
    bool ok = *end == ',';
    if (ok) row.error = std::strtod(end + 1, &end), ok = *end == ',';
    if (ok) row.wall_time_seconds = std::strtod(end + 1, &end), ok = *end == '\0';
    if (!ok) throw IoError(path.string() + ":" + std::to_string(lineno) + ": malformed row");
    rows.push_back(row);
  }
  return rows;
}

}  // namespace kgsplit
