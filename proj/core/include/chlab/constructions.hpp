#pragma once

// Explicit initial data for the non-uniform dependence experiments.
//
//   φ̂(ξ) = S((1/2 - |ξ|)/(1/4))     (1 on |ξ| <= 1/4, 0 on |ξ| >= 1/2)
//   f_n  = 2^{-ns} φ(x) sin(ω_n x),  g_n = (12/17) 2^{-n} φ(x),  ω_n = (17/12)·2^n
//   u_0  = f_n + g_n,                v_0 = -u_0 ∂_x u_0
//
// Every function of the form φ(x)·e^{±iωx} is synthesized by sampling its
// continuous transform φ̂(ξ ∓ ω) on the frequency lattice, i.e. as the
// periodization of the real-line function. Spectral supports are then exact
// on the grid regardless of how slowly φ decays.

#include <chlab/littlewood_paley.hpp>
#include <chlab/spectral.hpp>

#include <stdexcept>

namespace chlab {

/// Thrown when a construction would not be resolved by the grid.
class BandLimitError : public std::domain_error {
 public:
  BandLimitError(const std::string& what, int max_admissible_n)
      : std::domain_error(what), max_n_(max_admissible_n) {}
  int max_admissible_n() const noexcept { return max_n_; }

 private:
  int max_n_;
};

double bump_hat(double xi) noexcept;

class BumpProfile {
 public:
  /// Throws std::invalid_argument when fewer than 16 grid frequencies fall
  /// inside |ξ| <= 1/2.
  explicit BumpProfile(const GridSpec& grid);

  const Field& phi() const noexcept { return phi_; }
  static double phi_hat(double xi) noexcept { return bump_hat(xi); }

  /// φ(0) read from the grid (x = 0 is a grid point).
  double value_at_origin() const noexcept;
  /// |φ(-L)| / ‖φ‖_∞: how far the periodized bump is from vanishing at the
  /// domain edge.
  double tail_ratio() const noexcept;
  /// Radius δ of the connected interval around 0 where φ >= ‖φ‖_∞/2.
  double half_max_radius() const noexcept;
  /// Imaginary residue dropped when φ̂ was inverted.
  double inversion_residue() const noexcept { return residue_; }

 private:
  Field phi_;
  double residue_ = 0.0;
};

/// ω_n = (17·2^n)/12, formed so the power of two stays exact.
double dyadic_frequency(int n) noexcept;

/// Largest n with ω_n + 1 <= (2/3)·ξ_max (products of the data dealiasable).
int max_admissible_n(const GridSpec& grid) noexcept;
/// Throws BandLimitError unless 1 <= n <= max_admissible_n(grid).
void require_band(int n, const GridSpec& grid);

enum class Modulation { sine, cosine };

/// Periodization of φ(x)·sin(ωx) or φ(x)·cos(ωx).
Field modulated_bump(const GridSpec& grid, double omega, Modulation kind);

Field make_f(int n, const BesovParams& params, const GridSpec& grid);
Field make_g(int n, const GridSpec& grid);

struct ConstructionSet {
  int n;
  BesovParams params;
  Field f;
  Field g;
  Field u0;
  Field v0;
};

ConstructionSet make_set(int n, const BesovParams& params, const GridSpec& grid);

/// The four products with -v_0 = f∂f + f∂g + g∂g + g∂f (dealiased).
struct AdvectionTerms {
  Field f_df;
  Field f_dg;
  Field g_dg;
  Field g_df;

  Field sum() const { return f_df + f_dg + g_dg + g_df; }
};

AdvectionTerms advection_terms(const ConstructionSet& set);

/// ‖φ² cos(ω_n x)‖_{L^p}.
double lemma_M_quantity(int n, double p, const GridSpec& grid);

/// (1/X) ∫_0^X |cos x|^p dx. Throws for X <= 0 or p < 1.
double cos_mean(double p, double X);
/// (1/π) ∫_0^π |cos x|^p dx = Γ((p+1)/2) / (√π Γ(p/2 + 1)).
double cos_mean_limit(double p);

struct GdfMeasurement {
  /// ‖g_n ∂_x f_n‖_{B^s_{p,∞}} from the full block decomposition.
  double besov_sup;
  /// 2^{ns} ‖g_n ∂_x f_n‖_{L^p}.
  double single_block;
  /// |besov_sup - single_block| / single_block.
  double residual;
  /// Largest block other than j = n, relative to block n.
  double off_block;
};

GdfMeasurement gdf_besov_sup(int n, const BesovParams& params, const GridSpec& grid);

}  // namespace chlab
