#pragma once

// Dyadic partition of unity (χ, ψ_ring), inhomogeneous blocks Δ_j and
// nonhomogeneous Besov norms B^s_{p,r}.
//
// χ is radial, equal to 1 on |ξ| <= 3/4 and supported in |ξ| <= 4/3; it is
// built from the exp-based smooth transition S. The ring function is
// ψ_ring(ξ) = χ(ξ/2) - χ(ξ), so χ + Σ_{j>=0} ψ_ring(2^{-j}·) telescopes to 1.
//
//   Δ_j u = 0 (j <= -2),  χ(D)u (j = -1),  ψ_ring(2^{-j}D)u (j >= 0).

#include <chlab/spectral.hpp>

#include <limits>
#include <vector>

namespace chlab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// S(t) = h(t)/(h(t) + h(1-t)), h(t) = exp(-1/t) for t > 0 and 0 otherwise.
/// S is C^∞, 0 for t <= 0 and 1 for t >= 1.
double smooth_step(double t) noexcept;

struct LPFamily {
  double chi(double xi) const noexcept;
  double psi_ring(double xi) const noexcept;
  /// Smallest j with 2^{j+1}·3/4 >= ξ_max: every block above it vanishes on
  /// the grid, and the partition of unity is exact over the whole band.
  int j_max(const GridSpec& grid) const noexcept;
};

LPFamily build_lp_family() noexcept;

/// Regularity s, integrability p, summability r; p and r may be kInfinity.
struct BesovParams {
  double s = 2.0;
  double p = 2.0;
  double r = 2.0;

  /// Throws std::invalid_argument for p < 1, r < 1 or non-finite s.
  void validate() const;
  /// s > max{1 + 1/p, 3/2} and r < ∞.
  bool admissible_for_ch() const noexcept;
  /// s > 1 + 1/p with r < ∞, or s = 1 + 1/p with p < ∞ and r = 1.
  bool admissible_for_dp() const noexcept;

  BesovParams with_s(double new_s) const noexcept { return {new_s, p, r}; }
  BesovParams with_r(double new_r) const noexcept { return {s, p, new_r}; }
  bool operator==(const BesovParams&) const = default;
};

/// Blocks Δ_{-1} … Δ_{j_max} of one field.
class DyadicDecomposition {
 public:
  DyadicDecomposition(int j_max, std::vector<Field> blocks);

  int j_min() const noexcept { return -1; }
  int j_max() const noexcept { return j_max_; }
  /// Zero field for indices outside [-1, j_max].
  Field operator[](int j) const;
  Field sum() const;

 private:
  int j_max_;
  std::vector<Field> blocks_;
};

/// Littlewood–Paley machinery bound to one grid; block multipliers are
/// sampled once. Immutable and safe for concurrent use.
class LittlewoodPaley {
 public:
  explicit LittlewoodPaley(const GridSpec& grid);

  const GridSpec& grid() const noexcept { return grid_; }
  int j_max() const noexcept { return j_max_; }

  /// Multiplier of block j at half-spectrum slot k.
  double block_multiplier(int j, std::size_t slot) const noexcept;

  Field block(const Field& u, int j) const;
  DyadicDecomposition decompose(const Field& u) const;

  /// ‖Δ_j u‖_{L^p} for j = -1 … j_max (index j + 1). p = 2 is evaluated
  /// through the discrete Parseval identity.
  std::vector<double> block_norms(const Field& u, double p) const;

  double besov_norm(const Field& u, const BesovParams& params) const;
  /// Largest |χ + Σ_j ψ_ring(2^{-j}ξ) - 1| over the grid frequencies.
  double partition_defect() const noexcept;

 private:
  GridSpec grid_;
  int j_max_;
  // tables_[j + 1][k], k over the half spectrum
  std::vector<std::vector<double>> tables_;
};

/// Shared per-grid instance (constructed on first use, thread-safe).
const LittlewoodPaley& littlewood_paley(const GridSpec& grid);

/// Δ_j u; j <= -2 gives the zero field.
Field dyadic_block(const Field& u, int j);
/// ‖(2^{js}‖Δ_j u‖_{L^p})_j‖_{ℓ^r}.
double besov_norm(const Field& u, const BesovParams& params);
/// ℓ^r combination of already computed block norms (index j + 1).
double besov_from_block_norms(std::span<const double> block_norms, double s, double r);

/// Constant C with ‖u‖_{B^t_{p,r}} <= C‖u‖_{B^s_{p,q}} for this block
/// normalization: the j = -1 weight gives 2^{s-t}, and q > r adds the
/// Hölder factor of the geometric weights. Throws unless s > t, or s = t
/// with q <= r.
double embedding_constant(const BesovParams& stronger, const BesovParams& weaker);

/// Whether ‖u‖_{weaker} <= embedding_constant·‖u‖_{stronger} holds for the
/// computed norms (up to 1e-12 relative rounding).
bool embedding_check(const Field& u, const BesovParams& stronger, const BesovParams& weaker);

}  // namespace chlab
