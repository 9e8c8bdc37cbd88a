#include <chlab/littlewood_paley.hpp>

#include "spectral_detail.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace chlab {

double smooth_step(double t) noexcept {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

double LPFamily::chi(double xi) const noexcept {
  return smooth_step((4.0 / 3.0 - std::abs(xi)) / (4.0 / 3.0 - 3.0 / 4.0));
}

double LPFamily::psi_ring(double xi) const noexcept { return chi(0.5 * xi) - chi(xi); }

int LPFamily::j_max(const GridSpec& grid) const noexcept {
  const double xi_max = grid.nyquist();
  int j = -1;
  while (std::ldexp(0.75, j + 1) < xi_max) ++j;
  return j;
}

LPFamily build_lp_family() noexcept { return {}; }

// ---------------------------------------------------------------------------

void BesovParams::validate() const {
  if (!std::isfinite(s)) throw std::invalid_argument("Besov regularity s must be finite");
  if (std::isnan(p) || p < 1.0) throw std::invalid_argument("Besov integrability p must be >= 1");
  if (std::isnan(r) || r < 1.0) throw std::invalid_argument("Besov summability r must be >= 1");
}

bool BesovParams::admissible_for_ch() const noexcept {
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  return p >= 1.0 && r >= 1.0 && std::isfinite(r) && s > std::max(1.0 + inv_p, 1.5);
}

bool BesovParams::admissible_for_dp() const noexcept {
  if (p < 1.0 || r < 1.0 || !std::isfinite(r)) return false;
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  if (s > 1.0 + inv_p) return true;
  return s == 1.0 + inv_p && std::isfinite(p) && r == 1.0;
}

// ---------------------------------------------------------------------------

DyadicDecomposition::DyadicDecomposition(int j_max, std::vector<Field> blocks)
    : j_max_(j_max), blocks_(std::move(blocks)) {
  if (blocks_.size() != static_cast<std::size_t>(j_max_ + 2)) {
    throw std::invalid_argument("decomposition needs one block per index -1..j_max");
  }
}

Field DyadicDecomposition::operator[](int j) const {
  if (j < -1 || j > j_max_) return Field::zeros(blocks_.front().grid());
  return blocks_[static_cast<std::size_t>(j + 1)];
}

Field DyadicDecomposition::sum() const {
  Field total = Field::zeros(blocks_.front().grid());
  for (const Field& b : blocks_) total = total + b;
  return total;
}

// ---------------------------------------------------------------------------

LittlewoodPaley::LittlewoodPaley(const GridSpec& grid)
    : grid_(grid), j_max_(build_lp_family().j_max(grid)) {
  const LPFamily family = build_lp_family();
  tables_.resize(static_cast<std::size_t>(j_max_ + 2));
  for (int j = -1; j <= j_max_; ++j) {
    auto& t = tables_[static_cast<std::size_t>(j + 1)];
    t.resize(grid.half_size());
    for (std::size_t k = 0; k < t.size(); ++k) {
      const double xi = grid.frequency(k);
      t[k] = (j == -1) ? family.chi(xi) : family.psi_ring(std::ldexp(xi, -j));
    }
  }
}

double LittlewoodPaley::block_multiplier(int j, std::size_t slot) const noexcept {
  if (j < -1 || j > j_max_) return 0.0;
  return tables_[static_cast<std::size_t>(j + 1)][slot];
}

Field LittlewoodPaley::block(const Field& u, int j) const {
  if (!(u.grid() == grid_)) throw std::invalid_argument("field grid does not match");
  if (j < -1 || j > j_max_) return Field::zeros(grid_);
  auto raw = detail::raw_half_spectrum(u.samples());
  const auto& t = tables_[static_cast<std::size_t>(j + 1)];
  for (std::size_t k = 0; k < raw.size(); ++k) raw[k] *= t[k];
  return detail::field_from_raw_half(grid_, raw);
}

DyadicDecomposition LittlewoodPaley::decompose(const Field& u) const {
  if (!(u.grid() == grid_)) throw std::invalid_argument("field grid does not match");
  const auto raw = detail::raw_half_spectrum(u.samples());
  std::vector<Field> blocks;
  blocks.reserve(tables_.size());
  std::vector<Complex> work(raw.size());
  for (const auto& t : tables_) {
    for (std::size_t k = 0; k < raw.size(); ++k) work[k] = raw[k] * t[k];
    blocks.push_back(detail::field_from_raw_half(grid_, work));
  }
  return {j_max_, std::move(blocks)};
}

std::vector<double> LittlewoodPaley::block_norms(const Field& u, double p) const {
  if (!(u.grid() == grid_)) throw std::invalid_argument("field grid does not match");
  if (std::isnan(p) || p < 1.0) throw std::invalid_argument("L^p exponent must satisfy p >= 1");
  const auto raw = detail::raw_half_spectrum(u.samples());
  std::vector<double> norms;
  norms.reserve(tables_.size());
  std::vector<Complex> work(raw.size());
  for (const auto& t : tables_) {
    for (std::size_t k = 0; k < raw.size(); ++k) work[k] = raw[k] * t[k];
    if (p == 2.0) {
      norms.push_back(std::sqrt(detail::parseval_sum(grid_, work)));
    } else {
      norms.push_back(lp_norm(detail::field_from_raw_half(grid_, work), p));
    }
  }
  return norms;
}

double LittlewoodPaley::besov_norm(const Field& u, const BesovParams& params) const {
  params.validate();
  const auto norms = block_norms(u, params.p);
  return besov_from_block_norms(norms, params.s, params.r);
}

double LittlewoodPaley::partition_defect() const noexcept {
  double worst = 0.0;
  for (std::size_t k = 0; k < grid_.half_size(); ++k) {
    double sum = 0.0;
    for (const auto& t : tables_) sum += t[k];
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

// ---------------------------------------------------------------------------

const LittlewoodPaley& littlewood_paley(const GridSpec& grid) {
  static std::mutex mutex;
  static std::map<std::pair<double, std::size_t>, std::unique_ptr<LittlewoodPaley>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{grid.half_length(), grid.size()}];
  if (!slot) slot = std::make_unique<LittlewoodPaley>(grid);
  return *slot;
}

Field dyadic_block(const Field& u, int j) { return littlewood_paley(u.grid()).block(u, j); }

double besov_norm(const Field& u, const BesovParams& params) {
  return littlewood_paley(u.grid()).besov_norm(u, params);
}

double besov_from_block_norms(std::span<const double> block_norms, double s, double r) {
  if (std::isnan(r) || r < 1.0) throw std::invalid_argument("Besov summability r must be >= 1");
  std::vector<double> terms(block_norms.size());
  double peak = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const int j = static_cast<int>(i) - 1;
    terms[i] = std::exp2(j * s) * block_norms[i];
    peak = std::max(peak, terms[i]);
  }
  if (std::isinf(r) || peak == 0.0) return peak;
  double sum = 0.0;
  if (r == 1.0) {
    for (double t : terms) sum += t;
    return sum;
  }
  if (r == 2.0) {
    for (double t : terms) sum += t * t;
    return std::sqrt(sum);
  }
  for (double t : terms) sum += std::pow(t / peak, r);
  return peak * std::pow(sum, 1.0 / r);
}

double embedding_constant(const BesovParams& stronger, const BesovParams& weaker) {
  stronger.validate();
  weaker.validate();
  if (stronger.p != weaker.p) throw std::invalid_argument("embedding needs equal integrability p");
  const double q = stronger.r;
  const double r = weaker.r;
  const double gap = stronger.s - weaker.s;
  if (gap == 0.0) {
    if (q > r) throw std::invalid_argument("equal regularity needs q <= r");
    return 1.0;
  }
  if (gap < 0.0) throw std::invalid_argument("embedding needs s >= t");
  if (q <= r) return std::exp2(gap);
  const double inv_rho = 1.0 / r - (std::isinf(q) ? 0.0 : 1.0 / q);
  const double rho = 1.0 / inv_rho;
  return std::exp2(gap) * std::pow(1.0 - std::exp2(-gap * rho), -inv_rho);
}

bool embedding_check(const Field& u, const BesovParams& stronger, const BesovParams& weaker) {
  const double c = embedding_constant(stronger, weaker);
  const auto& lp = littlewood_paley(u.grid());
  const auto norms = lp.block_norms(u, stronger.p);
  const double lhs = besov_from_block_norms(norms, weaker.s, weaker.r);
  const double rhs = besov_from_block_norms(norms, stronger.s, stronger.r);
  return lhs <= c * rhs * (1.0 + 1e-12);
}

}  // namespace chlab
