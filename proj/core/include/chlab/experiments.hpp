#pragma once

// Reproduction experiments: each maps a quantitative estimate to measured
// tables, fitted rates and pass/fail verdicts.

#include <chlab/experiment_config.hpp>
#include <chlab/fitting.hpp>

#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace chlab {

enum class Verdict { pass, fail, info };

std::string to_string(Verdict v);
/// Throws std::invalid_argument for anything but "pass", "fail", "info".
Verdict parse_verdict(std::string_view text);

/// Marks a record that is not tied to one n (written as an empty cell).
inline constexpr int kAnyN = -1;
/// Marks a record that is not tied to one time (written as an empty cell).
inline constexpr double kAnyTime = std::numeric_limits<double>::quiet_NaN();

struct NormRecord {
  std::string experiment;
  int n = kAnyN;
  double t = kAnyTime;
  std::string name;
  double value = 0.0;

  /// NaN times compare equal to each other.
  friend bool operator==(const NormRecord& a, const NormRecord& b);
};

struct ExperimentResult {
  std::string experiment;
  std::vector<NormRecord> records;
  std::map<std::string, LineFit> fits;
  std::map<std::string, double> constants;
  std::map<std::string, Verdict> verdicts;
  std::map<std::string, std::string> notes;

  void record(int n, double t, std::string name, double value);
  void judge(const std::string& name, bool ok) { verdicts[name] = ok ? Verdict::pass : Verdict::fail; }
  void inform(const std::string& name) { verdicts[name] = Verdict::info; }

  /// True when no verdict failed.
  bool passed() const;
  /// Value of the unique record (n, t, name); throws std::out_of_range.
  double value(int n, double t, std::string_view name) const;

  friend bool operator==(const ExperimentResult& a, const ExperimentResult& b);
};

ExperimentResult exp_besov_scaling(const ExperimentConfig& cfg);
ExperimentResult exp_lower_bounds(const ExperimentConfig& cfg);
ExperimentResult exp_prop1(const ExperimentConfig& cfg);
ExperimentResult exp_prop2(const ExperimentConfig& cfg);
ExperimentResult exp_main(const ExperimentConfig& cfg);
ExperimentResult exp_product_estimates(const ExperimentConfig& cfg, int trials);
ExperimentResult exp_transport(const ExperimentConfig& cfg);
ExperimentResult exp_dp_smoke(const ExperimentConfig& cfg);

/// Dispatch by name (see experiment_names()); throws std::invalid_argument
/// for unknown names.
ExperimentResult run_experiment(std::string_view name, const ExperimentConfig& cfg);

/// Ratios used by the product-estimate probe for one pair (u, v); NaN when
/// a denominator vanishes.
struct ProductRatios {
  /// ‖uv‖_{B^{s-2}} / (‖u‖_{B^{s-2}} ‖v‖_{B^{s-1}})
  double negative_index;
  /// ‖uv‖_{B^s} / (‖u‖_{B^s}‖v‖_∞ + ‖v‖_{B^s}‖u‖_∞)
  double algebra;
  /// ‖P(u) - P(v)‖_{B^{s-1}} / (‖u - v‖_{B^{s-1}} ‖u + v‖_{B^s})
  double nonlocal_lipschitz;
};

ProductRatios product_ratios(const Field& u, const Field& v, const BesovParams& params);

}  // namespace chlab
