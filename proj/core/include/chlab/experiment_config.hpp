#pragma once

// Experiment configuration: defaults, `key = value` config files with
// per-experiment sections, validation and a stable digest.

#include <chlab/evolution.hpp>
#include <chlab/littlewood_paley.hpp>
#include <chlab/spectral.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chlab {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  double L = 64.0;
  std::size_t N = 65536;
  BesovParams params{2.0, 2.0, 2.0};
  int n_min = 4;
  int n_max = 8;
  double T = 0.5;
  double dt = 0.005;
  std::vector<double> record_times{0.0, 0.05, 0.1, 0.2, 0.35, 0.5};
  /// Times for the small-t expansion check.
  std::vector<double> small_times{1e-3, 2e-3, 5e-3, 1e-2};
  /// Window for the D(n_max, t)/t >= c0 verdict.
  double window_lo = 0.05;
  double window_hi = 0.5;
  std::uint64_t seed = 20240611;
  int trials = 40;
  /// Recorded velocity states for the transport experiment.
  int transport_samples = 20;

  GridSpec grid() const { return {L, N}; }
  std::vector<int> n_values() const;
  SolverConfig solver(std::vector<double> extra_times = {}) const;

  /// Throws ConfigError. `dynamics` also requires the self-interaction
  /// harmonic 2(ω_{n_max} + 1) to stay under the 2/3 cut.
  void validate(bool dynamics) const;

  /// Sorted `key = value` lines; sufficient to reproduce the run.
  std::string canonical_text() const;
  std::map<std::string, std::string> canonical_values() const;
  /// FNV-1a 64 of canonical_text(), as 16 hex digits.
  std::string digest() const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// scaling, lower-bounds, prop1, prop2, main, products, transport, dp.
const std::vector<std::string>& experiment_names();

/// Recognized keys, in canonical order.
const std::vector<std::string>& config_keys();

/// Applies one setting; throws ConfigError for unknown keys or bad values.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

struct ConfigFile {
  std::map<std::string, std::string> global;
  std::map<std::string, std::map<std::string, std::string>> sections;
};

/// Parses `key = value` lines, `# comments` and `[section]` headers. Section
/// names must be experiment names. Throws ConfigError with the line number.
ConfigFile parse_config(std::string_view text);
ConfigFile load_config_file(const std::string& path);

/// Defaults, then the file's global keys, then its section for `experiment`
/// (if any), then `overrides`.
ExperimentConfig effective_config(const ConfigFile& file, std::string_view experiment,
                                  const std::map<std::string, std::string>& overrides);

}  // namespace chlab
