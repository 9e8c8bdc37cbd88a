#include <chlab/experiment_config.hpp>

#include <chlab/constructions.hpp>

#include "text_format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace chlab {

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"scaling", "lower-bounds", "prop1",     "prop2",
                                              "main",    "products",     "transport", "dp"};
  return names;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "L",     "N",         "s",         "p",         "r",    "n_min",        "n_max",
      "T",     "dt",        "record_times", "small_times", "window_lo", "window_hi", "seed",
      "trials", "transport_samples"};
  return keys;
}

std::vector<int> ExperimentConfig::n_values() const {
  std::vector<int> out;
  for (int n = n_min; n <= n_max; ++n) out.push_back(n);
  return out;
}

SolverConfig ExperimentConfig::solver(std::vector<double> extra_times) const {
  SolverConfig sc;
  sc.final_time = T;
  sc.dt = dt;
  sc.record_times = record_times;
  sc.record_times.insert(sc.record_times.end(), extra_times.begin(), extra_times.end());
  return sc;
}

void ExperimentConfig::validate(bool dynamics) const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  try {
    (void)grid();
    params.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (n_min < 1) fail("n_min must be >= 1");
  if (n_max < n_min + 1) fail("n range needs at least two values for rate fits");
  const int max_n = max_admissible_n(grid());
  if (n_max > max_n) {
    fail("band condition violated: n_max=" + std::to_string(n_max) +
         " exceeds the largest resolved n=" + std::to_string(max_n) + " (increase N)");
  }
  if (dynamics) {
    const double harmonic = 2.0 * (dyadic_frequency(n_max) + 1.0);
    if (harmonic > 2.0 / 3.0 * grid().nyquist()) {
      fail("dynamics band condition violated: 2(omega_nmax + 1) = " +
           detail::format_double(harmonic) + " exceeds the dealiasing cut " +
           detail::format_double(2.0 / 3.0 * grid().nyquist()) + " (increase N)");
    }
  }
  if (!(T > 0.0) || !std::isfinite(T)) fail("T must be positive");
  if (!(dt > 0.0) || !(dt <= T)) fail("dt must satisfy 0 < dt <= T");
  for (double t : record_times) {
    if (!(t >= 0.0 && t <= T)) fail("record time outside [0, T]");
  }
  for (double t : small_times) {
    if (!(t > 0.0 && t <= T)) fail("small time outside (0, T]");
  }
  if (small_times.size() < 2) fail("need at least two small times");
  if (!(window_lo > 0.0 && window_lo <= window_hi && window_hi <= T)) {
    fail("c0 window must satisfy 0 < window_lo <= window_hi <= T");
  }
  const bool window_hit = std::any_of(record_times.begin(), record_times.end(), [&](double t) {
    return t >= window_lo && t <= window_hi;
  });
  if (!window_hit) fail("no record time inside the c0 window");
  if (trials < 1) fail("trials must be >= 1");
  if (transport_samples < 2) fail("transport_samples must be >= 2");
}

namespace {

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += detail::format_double(v[i]);
  }
  return out;
}

}  // namespace

std::map<std::string, std::string> ExperimentConfig::canonical_values() const {
  using detail::format_double;
  return {{"L", format_double(L)},
          {"N", std::to_string(N)},
          {"s", format_double(params.s)},
          {"p", format_double(params.p)},
          {"r", format_double(params.r)},
          {"n_min", std::to_string(n_min)},
          {"n_max", std::to_string(n_max)},
          {"T", format_double(T)},
          {"dt", format_double(dt)},
          {"record_times", join(record_times)},
          {"small_times", join(small_times)},
          {"window_lo", format_double(window_lo)},
          {"window_hi", format_double(window_hi)},
          {"seed", std::to_string(seed)},
          {"trials", std::to_string(trials)},
          {"transport_samples", std::to_string(transport_samples)}};
}

std::string ExperimentConfig::canonical_text() const {
  const auto values = canonical_values();
  std::string out;
  for (const auto& key : config_keys()) out += key + " = " + values.at(key) + "\n";
  return out;
}

std::string ExperimentConfig::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_text()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------

namespace {

double to_double(std::string_view key, std::string_view value) {
  const auto v = detail::parse_double(value);
  if (!v || std::isnan(*v)) {
    throw ConfigError("bad number for " + std::string(key) + ": '" + std::string(value) + "'");
  }
  return *v;
}

template <typename Int>
Int to_integer(std::string_view key, std::string_view value) {
  const auto v = detail::parse_integer<Int>(value);
  if (!v) throw ConfigError("bad integer for " + std::string(key) + ": '" + std::string(value) + "'");
  return *v;
}

std::vector<double> to_list(std::string_view key, std::string_view value) {
  std::vector<double> out;
  std::string_view rest = detail::trim(value);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    out.push_back(to_double(key, rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (out.empty()) throw ConfigError("empty list for " + std::string(key));
  return out;
}

}  // namespace

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  if (key == "L") cfg.L = to_double(key, value);
  else if (key == "N") cfg.N = to_integer<std::size_t>(key, value);
  else if (key == "s") cfg.params.s = to_double(key, value);
  else if (key == "p") cfg.params.p = to_double(key, value);
  else if (key == "r") cfg.params.r = to_double(key, value);
  else if (key == "n_min") cfg.n_min = to_integer<int>(key, value);
  else if (key == "n_max") cfg.n_max = to_integer<int>(key, value);
  else if (key == "T") cfg.T = to_double(key, value);
  else if (key == "dt") cfg.dt = to_double(key, value);
  else if (key == "record_times") cfg.record_times = to_list(key, value);
  else if (key == "small_times") cfg.small_times = to_list(key, value);
  else if (key == "window_lo") cfg.window_lo = to_double(key, value);
  else if (key == "window_hi") cfg.window_hi = to_double(key, value);
  else if (key == "seed") cfg.seed = to_integer<std::uint64_t>(key, value);
  else if (key == "trials") cfg.trials = to_integer<int>(key, value);
  else if (key == "transport_samples") cfg.transport_samples = to_integer<int>(key, value);
  else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

ConfigFile parse_config(std::string_view text) {
  ConfigFile file;
  std::map<std::string, std::string>* target = &file.global;
  const auto& names = experiment_names();
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string_view line = detail::trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const std::string where = "config line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "unterminated section header");
      const std::string name(detail::trim(line.substr(1, line.size() - 2)));
      if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw ConfigError(where + "unknown section [" + name + "]");
      }
      target = &file.sections[name];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string value(detail::trim(line.substr(eq + 1)));
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(where + "unknown config key '" + key + "'");
    }
    if (target->count(key)) throw ConfigError(where + "duplicate key '" + key + "'");
    (*target)[key] = value;
  }
  return file;
}

ConfigFile load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ExperimentConfig effective_config(const ConfigFile& file, std::string_view experiment,
                                  const std::map<std::string, std::string>& overrides) {
  ExperimentConfig cfg;
  for (const auto& [k, v] : file.global) apply_setting(cfg, k, v);
  if (auto it = file.sections.find(std::string(experiment)); it != file.sections.end()) {
    for (const auto& [k, v] : it->second) apply_setting(cfg, k, v);
  }
  for (const auto& [k, v] : overrides) apply_setting(cfg, k, v);
  return cfg;
}

}  // namespace chlab
