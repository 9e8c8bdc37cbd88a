#pragma once

// Verdict thresholds for the experiment suite. The inequalities being
// probed carry unspecified constants, so verdicts are rate- and sign-based;
// every tolerance lives here.

namespace chlab::thresholds {

/// Margin added to an upper bound on a fitted log2 slope, and the band
/// around predicted slopes of ±1.
inline constexpr double slope_margin = 0.15;
/// Band around the exact slopes σ - s of ‖f_n‖_{B^σ} in n.
inline constexpr double scaling_slope_band = 0.05;
/// Band around slope -1 of D(n, 0) in n.
inline constexpr double initial_distance_slope_band = 0.10;
/// Band around slope 2 of ‖w_n‖ in log t at small t.
inline constexpr double small_time_slope_band = 0.10;
/// Relative spread allowed when a quantity is declared stabilized in n.
inline constexpr double stabilization = 0.10;
/// RMS relative residual allowed for the a·t² + b(n) fit.
inline constexpr double two_term_residual = 0.10;
/// Factor for "consistent with" comparisons and constant stability.
inline constexpr double consistency_factor = 2.0;
/// Spectral leakage tolerance for block identities.
inline constexpr double block_identity = 1e-10;
/// Relative tolerance for ‖M_n‖² against ½‖φ²‖² (n >= 6).
inline constexpr double m_squared_relative = 0.05;
/// Relative slack on the explicit bound for ‖g_n‖_{B^s}.
inline constexpr double explicit_bound_slack = 1e-6;
/// Relative tolerance for D(n, 0) = ‖g_n‖_{B^s}.
inline constexpr double identity_at_zero = 1e-10;
/// Looser slope band for the DP run (no explicit constants available).
inline constexpr double dp_slope_band = 0.20;
/// Relative slack for the triangle-inequality consistency check.
inline constexpr double triangle_slack = 1e-9;

}  // namespace chlab::thresholds
