#pragma once

// Method-of-lines RK4 integration of
//   CH:        u_t = -u u_x + P(u),   P(u) = -∂_x(1-∂_x²)^{-1}(u² + ½u_x²)
//   DP:        u_t = -u u_x - (3/2)∂_x(1-∂_x²)^{-1}(u²)
//   transport: f_t = -u(t) f_x + g(t)
// on the periodic grid, with 2/3-rule dealiasing of every product.

#include <chlab/littlewood_paley.hpp>
#include <chlab/spectral.hpp>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chlab {

enum class Equation { camassa_holm, degasperis_procesi };
enum class TimeDirection { forward, backward };

std::string to_string(Equation eq);

class SolverError : public std::runtime_error {
 public:
  enum class Kind { cfl_violation, blow_up, non_finite, unresolved, time_range };

  SolverError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

struct SolverConfig {
  double final_time = 0.5;
  /// Fixed step; when empty the CFL step is used.
  std::optional<double> dt;
  double cfl = 0.5;
  /// Output times in [0, final_time]; 0 and final_time are always recorded.
  /// Steps are shortened so every output time is hit exactly.
  std::vector<double> record_times;
  /// Abort when max|u_x| exceeds this multiple of its initial value.
  double blowup_factor = 10.0;
  /// Refuse initial data whose top-third spectral energy fraction is larger.
  double resolution_tol = 1e-6;
  /// Backward integrates u_τ = -rhs(u); recorded times are elapsed τ.
  TimeDirection direction = TimeDirection::forward;

  /// c_cfl / (ξ_max·max|u| + 1).
  double stable_step(const Field& u) const noexcept;
};

struct Diagnostics {
  /// ∫ u dx
  double mean = 0.0;
  /// ∫ (u² + u_x²) dx, evaluated spectrally.
  double h1_energy = 0.0;
  /// Spectral energy fraction in the top third of the band.
  double resolution = 0.0;
  /// max |u_x|
  double max_slope = 0.0;
};

Diagnostics diagnose(const Field& u);

class Trajectory {
 public:
  Trajectory(std::vector<double> times, std::vector<Field> states);

  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<Field>& states() const noexcept { return states_; }
  const std::vector<Diagnostics>& diagnostics() const noexcept { return diagnostics_; }
  std::size_t size() const noexcept { return times_.size(); }
  double start_time() const noexcept { return times_.front(); }
  double end_time() const noexcept { return times_.back(); }
  const GridSpec& grid() const noexcept { return states_.front().grid(); }

  /// State recorded at t (to 1e-12); throws std::out_of_range otherwise.
  const Field& at(double t) const;
  /// Linear interpolation between recorded states; throws outside the range.
  Field interpolate(double t) const;

 private:
  std::vector<double> times_;
  std::vector<Field> states_;
  std::vector<Diagnostics> diagnostics_;
};

/// Constant-in-time trajectory over [0, T] (e.g. a frozen velocity).
Trajectory steady_trajectory(const Field& state, double final_time);

/// Throws SolverError(unresolved) when top-band energy exceeds tol.
Field rhs_ch(const Field& u, double resolution_tol = 1e-6);
Field rhs_dp(const Field& u, double resolution_tol = 1e-6);
Field rhs(Equation eq, const Field& u, double resolution_tol = 1e-6);

Trajectory solve(const Field& u0, const SolverConfig& cfg, Equation eq);

/// g(t) for the transport equation; an empty function means g = 0.
using Forcing = std::function<Field(double t)>;

/// RK4 for f_t + u f_x = g with u linearly interpolated in time between the
/// velocity's recorded states. The velocity must cover [0, final_time].
Trajectory solve_transport(const Field& f0, const Trajectory& velocity, const Forcing& forcing,
                           const SolverConfig& cfg);

struct GronwallReport {
  /// Smallest C >= 0 for which
  ///   ‖f(t)‖_{B^σ} <= e^{C V(t)} (‖f_0‖_{B^σ} + ∫_0^t e^{-C V(τ)} ‖g(τ)‖_{B^σ} dτ),
  ///   V(t) = ∫_0^t ‖∂_x u(τ)‖_{B^{σ-1}} dτ,
  /// holds at every recorded time (time integrals by the trapezoid rule).
  /// +infinity when no finite C works.
  double constant = 0.0;
  bool finite = true;
  std::vector<double> times;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> v_integral;
};

/// Branch σ > 1 + 1/p only (throws std::invalid_argument otherwise);
/// `sigma_params.s` is σ.
GronwallReport gronwall_bound_check(const Trajectory& solution, const Trajectory& velocity,
                                    const BesovParams& sigma_params, const Forcing& forcing);

}  // namespace chlab
