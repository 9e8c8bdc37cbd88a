#include <chlab/constructions.hpp>

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace chlab {

double bump_hat(double xi) noexcept { return smooth_step((0.5 - std::abs(xi)) / 0.25); }

namespace {

std::size_t lattice_points_in_support(const GridSpec& grid) {
  return 2 * static_cast<std::size_t>(std::floor(0.5 / grid.fundamental())) + 1;
}

// Field whose continuous transform is `hat`, sampled on the lattice.
template <typename Hat>
Field synthesize(const GridSpec& grid, Hat&& hat, double* residue = nullptr) {
  std::vector<Complex> coefficients(grid.size());
  for (std::size_t k = 0; k < coefficients.size(); ++k) coefficients[k] = hat(grid.frequency(k));
  Spectrum spectrum(grid, std::move(coefficients));
  if (residue != nullptr) *residue = spectrum.hermitian_defect();
  return to_field(spectrum);
}

}  // namespace

BumpProfile::BumpProfile(const GridSpec& grid) : phi_(Field::zeros(grid)) {
  const std::size_t count = lattice_points_in_support(grid);
  if (count < 16) {
    throw std::invalid_argument("grid too coarse in frequency: " + std::to_string(count) +
                                " samples in |xi| <= 1/2, need >= 16 (increase L)");
  }
  phi_ = synthesize(
      grid, [](double xi) { return Complex(bump_hat(xi), 0.0); }, &residue_);
}

double BumpProfile::value_at_origin() const noexcept { return phi_[phi_.size() / 2]; }

double BumpProfile::tail_ratio() const noexcept {
  const double peak = phi_.max_abs();
  return peak == 0.0 ? 0.0 : std::abs(phi_[0]) / peak;
}

double BumpProfile::half_max_radius() const noexcept {
  const double level = 0.5 * phi_.max_abs();
  const std::size_t centre = phi_.size() / 2;
  std::size_t steps = 0;
  while (centre + steps + 1 < phi_.size() && phi_[centre + steps + 1] >= level) ++steps;
  return static_cast<double>(steps) * phi_.grid().spacing();
}

double dyadic_frequency(int n) noexcept { return std::ldexp(17.0, n) / 12.0; }

int max_admissible_n(const GridSpec& grid) noexcept {
  const double band = 2.0 / 3.0 * grid.nyquist();
  int n = 0;
  while (dyadic_frequency(n + 1) + 1.0 <= band) ++n;
  return n;
}

void require_band(int n, const GridSpec& grid) {
  const int max_n = max_admissible_n(grid);
  if (n < 1 || n > max_n) {
    throw BandLimitError("dyadic index n=" + std::to_string(n) +
                             " is not resolved by the grid; max admissible n is " +
                             std::to_string(max_n),
                         max_n);
  }
}

Field modulated_bump(const GridSpec& grid, double omega, Modulation kind) {
  if (kind == Modulation::sine) {
    // φ sin(ωx)  ->  (i/2)[φ̂(ξ + ω) - φ̂(ξ - ω)]
    return synthesize(grid, [omega](double xi) {
      return Complex(0.0, 0.5 * (bump_hat(xi + omega) - bump_hat(xi - omega)));
    });
  }
  return synthesize(grid, [omega](double xi) {
    return Complex(0.5 * (bump_hat(xi + omega) + bump_hat(xi - omega)), 0.0);
  });
}

Field make_f(int n, const BesovParams& params, const GridSpec& grid) {
  params.validate();
  require_band(n, grid);
  const double amplitude = std::exp2(-n * params.s);
  return amplitude * modulated_bump(grid, dyadic_frequency(n), Modulation::sine);
}

Field make_g(int n, const GridSpec& grid) {
  require_band(n, grid);
  return (12.0 / 17.0) * std::exp2(-n) * BumpProfile(grid).phi();
}

ConstructionSet make_set(int n, const BesovParams& params, const GridSpec& grid) {
  Field f = make_f(n, params, grid);
  Field g = make_g(n, grid);
  Field u0 = f + g;
  Field v0 = -dealiased_product(u0, derivative(u0));
  return {n, params, std::move(f), std::move(g), std::move(u0), std::move(v0)};
}

AdvectionTerms advection_terms(const ConstructionSet& set) {
  const Field df = derivative(set.f);
  const Field dg = derivative(set.g);
  return {dealiased_product(set.f, df), dealiased_product(set.f, dg),
          dealiased_product(set.g, dg), dealiased_product(set.g, df)};
}

double lemma_M_quantity(int n, double p, const GridSpec& grid) {
  require_band(n, grid);
  const Field phi = BumpProfile(grid).phi();
  const Field carrier = modulated_bump(grid, dyadic_frequency(n), Modulation::cosine);
  return lp_norm(pointwise_product(phi, carrier), p);
}

double cos_mean_limit(double p) {
  if (std::isnan(p) || p < 1.0) throw std::invalid_argument("cos_mean needs p >= 1");
  return std::tgamma(0.5 * (p + 1.0)) / (std::sqrt(std::numbers::pi) * std::tgamma(0.5 * p + 1.0));
}

double cos_mean(double p, double X) {
  if (std::isnan(p) || p < 1.0) throw std::invalid_argument("cos_mean needs p >= 1");
  if (!(X > 0.0) || !std::isfinite(X)) throw std::invalid_argument("cos_mean needs 0 < X < inf");
  using std::numbers::pi;
  const double half_period = pi * cos_mean_limit(p);  // ∫_0^π |cos|^p
  const double periods = std::floor(X / pi);
  const double rest = std::max(0.0, X - periods * pi);
  // ∫_0^θ cos^p = ½ B(sin²θ; ½, (p+1)/2) and ∫_0^θ sin^p = ½ B(sin²θ; (p+1)/2, ½), θ <= π/2.
  double partial = 0.0;
  if (rest > 0.0) {
    if (rest <= 0.5 * pi) {
      const double s = std::sin(rest);
      partial = 0.5 * boost::math::beta(0.5, 0.5 * (p + 1.0), s * s);
    } else {
      const double s = std::sin(rest - 0.5 * pi);
      partial = 0.5 * half_period + 0.5 * boost::math::beta(0.5 * (p + 1.0), 0.5, s * s);
    }
  }
  return (periods * half_period + partial) / X;
}

GdfMeasurement gdf_besov_sup(int n, const BesovParams& params, const GridSpec& grid) {
  params.validate();
  const Field f = make_f(n, params, grid);
  const Field g = make_g(n, grid);
  const Field product = dealiased_product(g, derivative(f));
  const auto& lp = littlewood_paley(grid);
  const auto norms = lp.block_norms(product, params.p);
  const double besov_sup = besov_from_block_norms(norms, params.s, kInfinity);
  const double single_block = std::exp2(n * params.s) * lp_norm(product, params.p);
  const double on_block = n + 1 < static_cast<int>(norms.size()) ? norms[static_cast<std::size_t>(n + 1)] : 0.0;
  double off = 0.0;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    if (static_cast<int>(i) != n + 1) off = std::max(off, norms[i]);
  }
  return {besov_sup, single_block,
          single_block == 0.0 ? 0.0 : std::abs(besov_sup - single_block) / single_block,
          on_block == 0.0 ? 0.0 : off / on_block};
}

}  // namespace chlab
