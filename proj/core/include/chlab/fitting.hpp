#pragma once

// Least-squares rate fits used by the experiment verdicts.

#include <cstddef>
#include <span>
#include <vector>

namespace chlab {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square deviation of the data from the fitted line.
  double residual = 0.0;

  bool operator==(const LineFit&) const = default;
};

/// Ordinary least squares y ≈ slope·x + intercept. Needs >= 2 distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Line fit of log2(values) against x; throws std::domain_error if any
/// value is not positive.
LineFit fit_log2(std::span<const double> x, std::span<const double> values);

/// Line fit of log2(values) against log2(t).
LineFit fit_loglog(std::span<const double> t, std::span<const double> values);

struct TwoTermFit {
  double a = 0.0;
  /// One offset per group.
  std::vector<double> b;
  /// RMS of (model - data)/data over all points.
  double residual = 0.0;
};

/// Fits data[g][i] ≈ a·t[i]² + b[g] by least squares on relative errors
/// (every point weighted by 1/data). All data must be positive.
TwoTermFit fit_quadratic_plus_offset(const std::vector<std::vector<double>>& data,
                                     std::span<const double> t);

}  // namespace chlab
