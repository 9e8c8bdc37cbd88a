#include <chlab/littlewood_paley.hpp>

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace chlab;
using chlab::testing::max_diff;

namespace {

constexpr double pi = std::numbers::pi;

// Brute-force reference for the largest useful block index.
int reference_j_max(const GridSpec& g) {
  int j = -1;
  while (std::ldexp(1.0, j + 1) * 0.75 < g.nyquist()) ++j;
  return j;
}

}  // namespace

TEST(SmoothStep, LimitsAndSymmetry) {
  EXPECT_EQ(smooth_step(-1.0), 0.0);
  EXPECT_EQ(smooth_step(0.0), 0.0);
  EXPECT_EQ(smooth_step(1.0), 1.0);
  EXPECT_EQ(smooth_step(2.0), 1.0);
  EXPECT_NEAR(smooth_step(0.5), 0.5, 1e-15);
  for (double t = 0.01; t < 1.0; t += 0.01) {
    EXPECT_NEAR(smooth_step(t) + smooth_step(1.0 - t), 1.0, 1e-14);
    EXPECT_LE(smooth_step(t - 0.005), smooth_step(t));
  }
  for (double t = 0.1; t < 0.9; t += 0.01) EXPECT_LT(smooth_step(t - 0.005), smooth_step(t));
}

TEST(Partition, ChiAndRingSupports) {
  const LPFamily lp = build_lp_family();
  for (double xi = 0.0; xi <= 0.75; xi += 0.01) EXPECT_EQ(lp.chi(xi), 1.0);
  for (double xi = 4.0 / 3.0; xi < 5.0; xi += 0.01) EXPECT_EQ(lp.chi(xi), 0.0);
  for (double xi = -3.0; xi <= 3.0; xi += 0.01) {
    EXPECT_EQ(lp.chi(xi), lp.chi(-xi));
    EXPECT_GE(lp.psi_ring(xi), 0.0);
  }
  for (double xi = 0.0; xi < 0.75; xi += 0.01) EXPECT_EQ(lp.psi_ring(xi), 0.0);
  for (double xi = 8.0 / 3.0 + 1e-12; xi < 10.0; xi += 0.01) EXPECT_EQ(lp.psi_ring(xi), 0.0);
  EXPECT_EQ(lp.psi_ring(1.4), 1.0);
}

TEST(Partition, DefectOnGrids) {
  for (const auto& g : {GridSpec(pi, 64), GridSpec(64.0, 65536), GridSpec(10.0, 1000)}) {
    EXPECT_LE(littlewood_paley(g).partition_defect(), 1e-12);
  }
}

TEST(Partition, JMaxMatchesBruteForce) {
  EXPECT_EQ(build_lp_family().j_max(GridSpec(64.0, 65536)), 11);
  for (std::size_t n : {16u, 64u, 256u, 1024u, 4096u}) {
    for (double L : {1.0, pi, 20.0, 64.0}) {
      const GridSpec g(L, n);
      EXPECT_EQ(build_lp_family().j_max(g), reference_j_max(g)) << "L=" << L << " N=" << n;
    }
  }
}

TEST(Blocks, ReconstructionAndOutOfRange) {
  const GridSpec g(pi, 256);
  std::mt19937_64 rng(5);
  const Field u = chlab::testing::random_trig(rng, pi, 80).on(g);
  const auto d = littlewood_paley(g).decompose(u);
  EXPECT_LE(max_diff(d.sum(), u), 1e-10);
  EXPECT_EQ(d[-2].max_abs(), 0.0);
  EXPECT_EQ(d[d.j_max() + 1].max_abs(), 0.0);
  EXPECT_EQ(dyadic_block(u, -5).max_abs(), 0.0);
}

TEST(Blocks, ConstantLivesInLowBlock) {
  const GridSpec g(pi, 64);
  const Field c = Field::constant(g, 2.0);
  EXPECT_LE(max_diff(dyadic_block(c, -1), c), 1e-14);
  for (int j = 0; j <= 4; ++j) EXPECT_LE(dyadic_block(c, j).max_abs(), 1e-14);
}

TEST(Besov, PureModeInsideRingPlateau) {
  // ψ_ring(2^{-3}ξ) = 1 for ξ in [32/3, 12]; cos(11x) is a single block.
  const GridSpec g(pi, 128);
  const Field u = Field::from_function(g, [](double x) { return std::cos(11.0 * x); });
  for (double s : {-1.0, 0.0, 1.5, 2.0}) {
    for (double r : {1.0, 2.0, kInfinity}) {
      EXPECT_NEAR(besov_norm(u, {s, 2.0, r}), std::exp2(3.0 * s) * std::sqrt(pi),
                  1e-12 * std::exp2(3.0 * s));
      EXPECT_NEAR(besov_norm(u, {s, kInfinity, r}), std::exp2(3.0 * s), 1e-12 * std::exp2(3.0 * s));
    }
  }
}

TEST(Besov, FromBlockNormsByHand) {
  const std::vector<double> blocks{1.0, 2.0, 3.0};  // j = -1, 0, 1
  EXPECT_NEAR(besov_from_block_norms(blocks, 1.0, 2.0), std::sqrt(0.25 + 4.0 + 36.0), 1e-14);
  EXPECT_NEAR(besov_from_block_norms(blocks, 1.0, 1.0), 8.5, 1e-14);
  EXPECT_NEAR(besov_from_block_norms(blocks, 1.0, kInfinity), 6.0, 1e-14);
  EXPECT_NEAR(besov_from_block_norms(blocks, 0.0, 3.0), std::cbrt(36.0), 1e-14);
}

TEST(Besov, ParamsValidation) {
  EXPECT_THROW((BesovParams{1.0, 0.5, 2.0}.validate()), std::invalid_argument);
  EXPECT_THROW((BesovParams{1.0, 2.0, 0.0}.validate()), std::invalid_argument);
  EXPECT_THROW((BesovParams{kInfinity, 2.0, 2.0}.validate()), std::invalid_argument);
  EXPECT_TRUE((BesovParams{2.0, 2.0, 2.0}.admissible_for_ch()));
  EXPECT_FALSE((BesovParams{1.5, 2.0, 2.0}.admissible_for_ch()));
  EXPECT_FALSE((BesovParams{2.0, 2.0, kInfinity}.admissible_for_ch()));
  EXPECT_TRUE((BesovParams{1.5, 2.0, 1.0}.admissible_for_dp()));
  EXPECT_FALSE((BesovParams{1.5, 2.0, 2.0}.admissible_for_dp()));
}

TEST(Embedding, UnitConstantFailsForLowFrequencies) {
  // Only Δ_{-1} is non-zero, so ‖u‖_{B^t} / ‖u‖_{B^s} = 2^{s-t} > 1.
  const GridSpec g(pi, 64);
  const Field u = Field::constant(g, 1.0);
  const BesovParams strong{2.0, 2.0, 2.0}, weak{1.0, 2.0, 2.0};
  const double ratio = besov_norm(u, weak) / besov_norm(u, strong);
  EXPECT_NEAR(ratio, 2.0, 1e-12);
  EXPECT_GT(ratio, 1.0);
  EXPECT_DOUBLE_EQ(embedding_constant(strong, weak), 2.0);
  EXPECT_TRUE(embedding_check(u, strong, weak));
}

TEST(Embedding, HolderFactorAndErrors) {
  const BesovParams strong{2.0, 2.0, kInfinity}, weak{1.0, 2.0, 1.0};
  // ‖u‖_{B^1_{2,1}} = Σ_j 2^{-j}·2^{2j}‖Δ_j u‖ <= Σ_{j>=-1} 2^{-j} · ‖u‖_{B^2_{2,∞}}.
  EXPECT_NEAR(embedding_constant(strong, weak), 4.0, 1e-12);
  EXPECT_THROW(embedding_constant({1.0, 2.0, 2.0}, {2.0, 2.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(embedding_constant({1.0, 2.0, 2.0}, {1.0, 2.0, 1.0}), std::invalid_argument);
  EXPECT_DOUBLE_EQ(embedding_constant({1.0, 2.0, 1.0}, {1.0, 2.0, 2.0}), 1.0);

  const GridSpec g(pi, 256);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const Field u = chlab::testing::random_trig(rng, pi, 80).on(g);
    EXPECT_TRUE(embedding_check(u, strong, weak));
    EXPECT_TRUE(embedding_check(u, {2.0, 2.0, 2.0}, {1.5, 2.0, 2.0}));
  }
}
