#include <chlab/spectral.hpp>

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace chlab;
using chlab::testing::max_diff;

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

TEST(Grid, BasicGeometry) {
  const GridSpec g(pi, 64);
  EXPECT_DOUBLE_EQ(g.spacing(), 2.0 * pi / 64);
  EXPECT_DOUBLE_EQ(g.x(0), -pi);
  EXPECT_NEAR(g.x(32), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(g.fundamental(), 1.0);
  EXPECT_DOUBLE_EQ(g.nyquist(), 32.0);
  EXPECT_EQ(g.half_size(), 33u);
  EXPECT_EQ(g.wavenumber(0), 0);
  EXPECT_EQ(g.wavenumber(31), 31);
  EXPECT_EQ(g.wavenumber(32), -32);
  EXPECT_EQ(g.wavenumber(63), -1);
  EXPECT_EQ(g.dealias_cutoff(), 21u);
}

TEST(Grid, RejectsBadSizes) {
  EXPECT_THROW(GridSpec(1.0, 15), std::invalid_argument);
  EXPECT_THROW(GridSpec(1.0, 17), std::invalid_argument);
  EXPECT_THROW(GridSpec(0.0, 64), std::invalid_argument);
  EXPECT_THROW(GridSpec(-1.0, 64), std::invalid_argument);
}

TEST(Field, RejectsNonFiniteAndMismatchedSamples) {
  const GridSpec g(pi, 16);
  std::vector<double> v(16, 0.0);
  v[3] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(Field(g, v), std::invalid_argument);
  v[3] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(Field(g, v), std::invalid_argument);
  EXPECT_THROW(Field(g, std::vector<double>(15)), std::invalid_argument);
}

TEST(Transform, RoundTripRandomField) {
  const GridSpec g(3.0, 128);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  std::vector<double> v(g.size());
  for (auto& x : v) x = normal(rng);
  const Field u(g, v);
  EXPECT_LE(max_diff(to_field(to_spectrum(u)), u), 1e-13);
}

TEST(Transform, GaussianMatchesContinuumTransform) {
  // û(ξ) = √(2π) e^{-ξ²/2} for u = e^{-x²/2}; the periodization error on
  // [-8π, 8π) is far below rounding.
  const GridSpec g(8.0 * pi, 512);
  const Field u = Field::from_function(g, [](double x) { return std::exp(-0.5 * x * x); });
  const Spectrum s = to_spectrum(u);
  double worst = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double xi = g.frequency(k);
    worst = std::max(worst, std::abs(s[k] - Complex(std::sqrt(2.0 * pi) * std::exp(-0.5 * xi * xi))));
  }
  EXPECT_LE(worst, 1e-12);
  EXPECT_NEAR(s.at_wavenumber(0).real(), std::sqrt(2.0 * pi), 1e-12);
}

TEST(Transform, NonHermitianSpectrumRejected) {
  const GridSpec g(pi, 16);
  std::vector<Complex> c(16, Complex(0.0));
  c[1] = Complex(1.0, 0.0);  // no partner at slot 15
  const Spectrum s(g, c);
  EXPECT_GT(s.hermitian_defect(), 0.5);
  EXPECT_THROW(to_field(s), std::invalid_argument);
}

TEST(Multiplier, DerivativeOfTrigPolynomial) {
  const GridSpec g(2.5, 128);
  std::mt19937_64 rng(11);
  const auto p = chlab::testing::random_trig(rng, 2.5, 20);
  const Field du = derivative(p.on(g));
  const Field exact = Field::from_function(g, [&](double x) { return p.derivative(x); });
  EXPECT_LE(max_diff(du, exact), 1e-10);
}

TEST(Multiplier, NonHermitianMultiplierRejected) {
  const GridSpec g(pi, 32);
  const Field u = Field::from_function(g, [](double x) { return std::sin(x); });
  EXPECT_THROW(apply_multiplier(u, [](double xi) { return Complex(0.0, 1.0 + 0.0 * xi); }),
               std::invalid_argument);
  EXPECT_THROW(apply_multiplier(u, [](double) { return Complex(std::nan("")); }),
               std::invalid_argument);
}

TEST(Multiplier, HelmholtzInverseOnCosine) {
  const GridSpec g(pi, 64);
  const Field u = Field::from_function(g, [](double x) { return std::cos(2.0 * x); });
  const Field h = apply_multiplier(u, [](double xi) { return Complex(1.0 / (1.0 + xi * xi)); });
  const Field exact = Field::from_function(g, [](double x) { return std::cos(2.0 * x) / 5.0; });
  EXPECT_LE(max_diff(h, exact), 1e-14);
}

TEST(Multiplier, NonlocalTermOnSine) {
  // u² + ½u_x² = 3/4 - cos(2x)/4, so P(sin) = -∂_x(3/4 - cos(2x)/20) = -sin(2x)/10.
  const GridSpec g(pi, 64);
  const Field u = Field::from_function(g, [](double x) { return std::sin(x); });
  const Field exact = Field::from_function(g, [](double x) { return -0.1 * std::sin(2.0 * x); });
  EXPECT_LE(max_diff(nonlocal_P(u), exact), 1e-14);
}

TEST(Norms, LpOfConstantAndSine) {
  const GridSpec g(pi, 256);
  const Field one = Field::constant(g, 1.0);
  EXPECT_NEAR(lp_norm(one, 1.0), 2.0 * pi, 1e-12);
  EXPECT_NEAR(lp_norm(one, 2.0), std::sqrt(2.0 * pi), 1e-12);
  const Field s = Field::from_function(g, [](double x) { return 3.0 * std::sin(x); });
  // ∫|sin|² = π on the full period; rectangle rule is exact here.
  EXPECT_NEAR(lp_norm(s, 2.0), 3.0 * std::sqrt(pi), 1e-12);
  EXPECT_NEAR(lp_norm(s, 1.0), 12.0, 1e-3);
  EXPECT_DOUBLE_EQ(lp_norm(s, std::numeric_limits<double>::infinity()), s.max_abs());
  EXPECT_THROW(lp_norm(s, 0.5), std::invalid_argument);
}

TEST(Norms, ParsevalMatchesPhysicalSpace) {
  const GridSpec g(4.0, 256);
  std::mt19937_64 rng(3);
  const Field u = chlab::testing::random_trig(rng, 4.0, 60).on(g);
  EXPECT_NEAR(l2_norm_spectral(u), lp_norm(u, 2.0), 1e-12 * lp_norm(u, 2.0));
}

TEST(Dealias, RemovesOnlyTopBand) {
  const GridSpec g(pi, 64);
  const Field low = Field::from_function(g, [](double x) { return std::cos(21.0 * x); });
  const Field high = Field::from_function(g, [](double x) { return std::cos(22.0 * x); });
  EXPECT_LE(max_diff(dealias(low), low), 1e-13);
  EXPECT_LE(dealias(high).max_abs(), 1e-13);
  EXPECT_NEAR(top_band_energy(high), 1.0, 1e-12);
  EXPECT_LE(top_band_energy(low), 1e-25);
  EXPECT_TRUE(is_resolved(low));
  EXPECT_FALSE(is_resolved(high));
}

TEST(Dealias, ProductOfLowModesIsExact) {
  const GridSpec g(pi, 64);
  const Field a = Field::from_function(g, [](double x) { return std::sin(3.0 * x); });
  const Field b = Field::from_function(g, [](double x) { return std::cos(5.0 * x); });
  const Field exact = Field::from_function(
      g, [](double x) { return 0.5 * (std::sin(8.0 * x) - std::sin(2.0 * x)); });
  EXPECT_LE(max_diff(dealiased_product(a, b), exact), 1e-14);
}
