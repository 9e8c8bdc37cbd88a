#include <chlab/fitting.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace chlab {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_line: size mismatch");
  const std::size_t m = x.size();
  if (m < 2) throw std::invalid_argument("fit_line: need at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: abscissae are all equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double e = y[i] - (fit.slope * x[i] + fit.intercept);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(m));
  return fit;
}

namespace {

std::vector<double> log2_of(std::span<const double> values) {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw std::domain_error("log fit needs positive finite values");
    }
    out[i] = std::log2(values[i]);
  }
  return out;
}

}  // namespace

LineFit fit_log2(std::span<const double> x, std::span<const double> values) {
  return fit_line(x, log2_of(values));
}

LineFit fit_loglog(std::span<const double> t, std::span<const double> values) {
  return fit_line(log2_of(t), log2_of(values));
}

TwoTermFit fit_quadratic_plus_offset(const std::vector<std::vector<double>>& data,
                                     std::span<const double> t) {
  const std::size_t groups = data.size();
  if (groups == 0 || t.empty()) throw std::invalid_argument("two-term fit: no data");
  const std::size_t rows = groups * t.size();
  if (rows < groups + 2) throw std::invalid_argument("two-term fit: too few points");
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows),
                                            static_cast<Eigen::Index>(groups + 1));
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(rows));
  Eigen::Index row = 0;
  for (std::size_t g = 0; g < groups; ++g) {
    if (data[g].size() != t.size()) throw std::invalid_argument("two-term fit: ragged data");
    for (std::size_t i = 0; i < t.size(); ++i, ++row) {
      const double w = data[g][i];
      if (!(w > 0.0) || !std::isfinite(w)) {
        throw std::domain_error("two-term fit needs positive finite data");
      }
      A(row, 0) = t[i] * t[i] / w;
      A(row, static_cast<Eigen::Index>(g + 1)) = 1.0 / w;
      rhs(row) = 1.0;
    }
  }
  const Eigen::VectorXd coef = A.colPivHouseholderQr().solve(rhs);
  TwoTermFit fit;
  fit.a = coef(0);
  for (std::size_t g = 0; g < groups; ++g) fit.b.push_back(coef(static_cast<Eigen::Index>(g + 1)));
  const Eigen::VectorXd rel = A * coef - rhs;
  fit.residual = std::sqrt(rel.squaredNorm() / static_cast<double>(rows));
  return fit;
}

}  // namespace chlab
