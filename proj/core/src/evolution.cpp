#include <chlab/evolution.hpp>

#include "fft_engine.hpp"
#include "spectral_detail.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace chlab {

std::string to_string(Equation eq) {
  return eq == Equation::camassa_holm ? "camassa-holm" : "degasperis-procesi";
}

double SolverConfig::stable_step(const Field& u) const noexcept {
  return cfl / (u.grid().nyquist() * u.max_abs() + 1.0);
}

Diagnostics diagnose(const Field& u) {
  const GridSpec& g = u.grid();
  const std::size_t n = g.size();
  const auto raw = detail::raw_half_spectrum(u.samples());
  Diagnostics d;
  d.mean = g.spacing() * raw[0].real();
  double energy = 0.0;
  std::vector<Complex> raw_x(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const double xi = 2 * k == n ? 0.0 : g.frequency(k);
    energy += detail::half_weight(k, n) * (1.0 + xi * xi) * std::norm(raw[k]);
    raw_x[k] = raw[k] * Complex(0.0, xi);
  }
  // ∫|u|² = (1/2L)Σ|û|² = (dx/N)Σ w|raw|²
  d.h1_energy = energy * g.spacing() / static_cast<double>(n);
  d.resolution = top_band_energy(u);
  const auto ux = detail::samples_from_raw_half(raw_x, n);
  for (double v : ux) d.max_slope = std::max(d.max_slope, std::abs(v));
  return d;
}

// ---------------------------------------------------------------------------
// Trajectory

Trajectory::Trajectory(std::vector<double> times, std::vector<Field> states)
    : times_(std::move(times)), states_(std::move(states)) {
  if (times_.empty() || times_.size() != states_.size()) {
    throw std::invalid_argument("trajectory needs one state per time and at least one state");
  }
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1])) throw std::invalid_argument("trajectory times must increase");
    if (!(states_[i].grid() == states_[0].grid())) {
      throw std::invalid_argument("trajectory states live on different grids");
    }
  }
  diagnostics_.reserve(states_.size());
  for (const Field& s : states_) diagnostics_.push_back(diagnose(s));
}

const Field& Trajectory::at(double t) const {
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (std::abs(times_[i] - t) <= 1e-12) return states_[i];
  }
  throw std::out_of_range("no state recorded at t=" + std::to_string(t));
}

Field Trajectory::interpolate(double t) const {
  const double eps = 1e-12;
  if (!(t >= times_.front() - eps && t <= times_.back() + eps)) {
    throw std::out_of_range("time " + std::to_string(t) + " outside trajectory range");
  }
  if (times_.size() == 1) return states_.front();
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t hi = static_cast<std::size_t>(it - times_.begin());
  hi = std::clamp<std::size_t>(hi, 1, times_.size() - 1);
  const std::size_t lo = hi - 1;
  const double w = std::clamp((t - times_[lo]) / (times_[hi] - times_[lo]), 0.0, 1.0);
  if (w == 0.0) return states_[lo];
  if (w == 1.0) return states_[hi];
  return (1.0 - w) * states_[lo] + w * states_[hi];
}

Trajectory steady_trajectory(const Field& state, double final_time) {
  if (!(final_time > 0.0)) return Trajectory({0.0}, {state});
  return Trajectory({0.0, final_time}, {state, state});
}

// ---------------------------------------------------------------------------
// Right-hand sides

namespace {

// Buffers and multiplier tables for repeated evaluation on one grid.
class Evaluator {
 public:
  Evaluator(const GridSpec& grid, std::optional<Equation> eq)
      : grid_(grid),
        n_(grid.size()),
        cutoff_(grid.dealias_cutoff()),
        eq_(eq),
        xi_(grid.half_size(), 0.0),
        nonlocal_(grid.half_size(), 0.0),
        raw_(grid.half_size()),
        raw_x_(grid.half_size()),
        raw_a_(grid.half_size()),
        raw_q_(grid.half_size()),
        v_(n_),
        vx_(n_),
        a_(n_),
        q_(n_) {
    const double factor = eq == Equation::degasperis_procesi ? 1.5 : 1.0;
    for (std::size_t k = 0; k <= cutoff_ && 2 * k < n_; ++k) {
      const double xi = grid.frequency(k);
      xi_[k] = xi;
      nonlocal_[k] = -factor * xi / (1.0 + xi * xi);
    }
  }

  // out = -Π(v v_x) + nonlocal term, v = Π u. Returns max |v_x|.
  double evolution(std::span<const double> u, std::span<double> out) {
    const double slope = load(u);
    for (std::size_t i = 0; i < n_; ++i) {
      a_[i] = v_[i] * vx_[i];
      q_[i] = *eq_ == Equation::camassa_holm ? v_[i] * v_[i] + 0.5 * vx_[i] * vx_[i] : v_[i] * v_[i];
    }
    detail::fft_forward(a_, raw_a_);
    detail::fft_forward(q_, raw_q_);
    for (std::size_t k = 0; k < raw_.size(); ++k) {
      raw_[k] = k <= cutoff_ ? -raw_a_[k] + Complex(0.0, nonlocal_[k]) * raw_q_[k] : Complex(0.0);
    }
    finish(out);
    return slope;
  }

  // out = -Π(c Π(f_x)) + g, with c the velocity samples.
  void transport(std::span<const double> c, std::span<const double> f,
                 std::span<const double> forcing, std::span<double> out) {
    load(f);
    detail::fft_forward(c, raw_a_);
    detail::zero_above(raw_a_, cutoff_);
    detail::fft_inverse(raw_a_, a_);
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) q_[i] = a_[i] * scale * vx_[i];
    detail::fft_forward(q_, raw_q_);
    for (std::size_t k = 0; k < raw_.size(); ++k) raw_[k] = k <= cutoff_ ? -raw_q_[k] : Complex(0.0);
    finish(out);
    if (!forcing.empty()) {
      for (std::size_t i = 0; i < n_; ++i) out[i] += forcing[i];
    }
  }

 private:
  double load(std::span<const double> u) {
    detail::fft_forward(u, raw_);
    detail::zero_above(raw_, cutoff_);
    for (std::size_t k = 0; k < raw_.size(); ++k) raw_x_[k] = raw_[k] * Complex(0.0, xi_[k]);
    detail::fft_inverse(raw_, v_);
    detail::fft_inverse(raw_x_, vx_);
    const double scale = 1.0 / static_cast<double>(n_);
    double slope = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      v_[i] *= scale;
      vx_[i] *= scale;
      slope = std::max(slope, std::abs(vx_[i]));
    }
    return slope;
  }

  void finish(std::span<double> out) {
    detail::fft_inverse(raw_, out);
    const double scale = 1.0 / static_cast<double>(n_);
    for (double& v : out) v *= scale;
  }

  GridSpec grid_;
  std::size_t n_;
  std::size_t cutoff_;
  std::optional<Equation> eq_;
  std::vector<double> xi_;
  std::vector<double> nonlocal_;
  std::vector<Complex> raw_, raw_x_, raw_a_, raw_q_;
  std::vector<double> v_, vx_, a_, q_;
};

void require_resolved(const Field& u, double tol) {
  const double top = top_band_energy(u);
  if (top > tol) {
    std::ostringstream msg;
    msg << "input is not resolved: top-band energy fraction " << top << " exceeds " << tol;
    throw SolverError(SolverError::Kind::unresolved, msg.str());
  }
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

std::vector<double> output_times(const SolverConfig& cfg) {
  const double T = cfg.final_time;
  if (!(T >= 0.0) || !std::isfinite(T)) {
    throw SolverError(SolverError::Kind::time_range, "final time must be finite and >= 0");
  }
  std::vector<double> times{0.0, T};
  for (double t : cfg.record_times) {
    if (!(t >= 0.0 && t <= T * (1.0 + 1e-12))) {
      throw SolverError(SolverError::Kind::time_range,
                        "record time " + std::to_string(t) + " outside [0, T]");
    }
    times.push_back(std::min(t, T));
  }
  std::sort(times.begin(), times.end());
  std::vector<double> unique;
  for (double t : times) {
    if (unique.empty() || t - unique.back() > 1e-12) unique.push_back(t);
  }
  return unique;
}

double resolve_step(const SolverConfig& cfg, double stable) {
  if (!cfg.dt) return stable;
  const double dt = *cfg.dt;
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw SolverError(SolverError::Kind::cfl_violation, "time step must be positive");
  }
  if (dt > stable) {
    std::ostringstream msg;
    msg << "time step " << dt << " exceeds the CFL bound " << stable;
    throw SolverError(SolverError::Kind::cfl_violation, msg.str());
  }
  return dt;
}

// Classical RK4 driven by `f(t, y, dy)`, landing exactly on each output time.
template <typename Rhs, typename Guard>
Trajectory integrate(const Field& y0, const std::vector<double>& times, double dt, Rhs&& f,
                     Guard&& guard) {
  const GridSpec& grid = y0.grid();
  const std::size_t n = grid.size();
  std::vector<double> y(y0.samples().begin(), y0.samples().end());
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  std::vector<Field> states;
  states.reserve(times.size());
  states.push_back(y0);
  for (std::size_t seg = 1; seg < times.size(); ++seg) {
    const double t0 = times[seg - 1];
    const double span = times[seg] - t0;
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(span / dt - 1e-9)));
    const double h = span / static_cast<double>(steps);
    for (std::size_t step = 0; step < steps; ++step) {
      const double t = t0 + static_cast<double>(step) * h;
      guard(t, f(t, y, k1));
      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
      f(t + 0.5 * h, tmp, k2);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
      f(t + 0.5 * h, tmp, k3);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
      f(t + h, tmp, k4);
      for (std::size_t i = 0; i < n; ++i) {
        y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      }
      if (!all_finite(y)) {
        throw SolverError(SolverError::Kind::non_finite,
                          "non-finite state near t=" + std::to_string(t + h));
      }
    }
    states.emplace_back(grid, y);
  }
  return {times, std::move(states)};
}

}  // namespace

Field rhs_ch(const Field& u, double resolution_tol) {
  require_resolved(u, resolution_tol);
  Evaluator ev(u.grid(), Equation::camassa_holm);
  std::vector<double> out(u.size());
  ev.evolution(u.samples(), out);
  return {u.grid(), std::move(out)};
}

Field rhs_dp(const Field& u, double resolution_tol) {
  require_resolved(u, resolution_tol);
  Evaluator ev(u.grid(), Equation::degasperis_procesi);
  std::vector<double> out(u.size());
  ev.evolution(u.samples(), out);
  return {u.grid(), std::move(out)};
}

Field rhs(Equation eq, const Field& u, double resolution_tol) {
  return eq == Equation::camassa_holm ? rhs_ch(u, resolution_tol) : rhs_dp(u, resolution_tol);
}

Trajectory solve(const Field& u0, const SolverConfig& cfg, Equation eq) {
  require_resolved(u0, cfg.resolution_tol);
  const auto times = output_times(cfg);
  const double dt = resolve_step(cfg, cfg.stable_step(u0));
  const double sign = cfg.direction == TimeDirection::forward ? 1.0 : -1.0;
  const double slope0 = diagnose(u0).max_slope;
  const double limit = cfg.blowup_factor * std::max(slope0, std::numeric_limits<double>::min());

  Evaluator ev(u0.grid(), eq);
  auto f = [&](double, std::span<const double> y, std::span<double> dy) {
    const double slope = ev.evolution(y, dy);
    if (sign < 0.0) {
      for (double& v : dy) v = -v;
    }
    return slope;
  };
  auto guard = [&](double t, double slope) {
    if (!std::isfinite(slope)) {
      throw SolverError(SolverError::Kind::non_finite, "non-finite slope at t=" + std::to_string(t));
    }
    if (slope0 > 0.0 && slope > limit) {
      std::ostringstream msg;
      msg << "blow-up guard: max|u_x| = " << slope << " exceeds " << cfg.blowup_factor
          << "x its initial value at t=" << t;
      throw SolverError(SolverError::Kind::blow_up, msg.str());
    }
  };
  return integrate(u0, times, dt, f, guard);
}

Trajectory solve_transport(const Field& f0, const Trajectory& velocity, const Forcing& forcing,
                           const SolverConfig& cfg) {
  if (!(velocity.grid() == f0.grid())) {
    throw std::invalid_argument("velocity and data live on different grids");
  }
  const auto times = output_times(cfg);
  if (velocity.start_time() > 1e-12 || velocity.end_time() < cfg.final_time - 1e-12) {
    std::ostringstream msg;
    msg << "velocity covers [" << velocity.start_time() << ", " << velocity.end_time()
        << "] but the transport run needs [0, " << cfg.final_time << "]";
    throw SolverError(SolverError::Kind::time_range, msg.str());
  }
  double peak = 0.0;
  for (const Field& s : velocity.states()) peak = std::max(peak, s.max_abs());
  const double stable = cfg.cfl / (f0.grid().nyquist() * peak + 1.0);
  const double dt = resolve_step(cfg, stable);
  const double end = velocity.end_time();

  Evaluator ev(f0.grid(), std::nullopt);
  auto f = [&](double t, std::span<const double> y, std::span<double> dy) {
    const Field c = velocity.interpolate(std::min(t, end));
    if (forcing) {
      const Field g = forcing(t);
      if (!(g.grid() == f0.grid())) throw std::invalid_argument("forcing lives on another grid");
      ev.transport(c.samples(), y, g.samples(), dy);
    } else {
      ev.transport(c.samples(), y, {}, dy);
    }
    return 0.0;
  };
  auto guard = [](double, double) {};
  return integrate(f0, times, dt, f, guard);
}

// ---------------------------------------------------------------------------
// Gronwall-type bound

namespace {

// Cumulative trapezoid integral of samples y over times t.
std::vector<double> cumulative_trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t i = 1; i < t.size(); ++i) {
    out[i] = out[i - 1] + 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
  }
  return out;
}

std::vector<double> bound_for(double c, double f0, const std::vector<double>& t,
                              const std::vector<double>& v, const std::vector<double>& g) {
  std::vector<double> weighted(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) weighted[i] = std::exp(-c * v[i]) * g[i];
  const auto integral = cumulative_trapezoid(t, weighted);
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = std::exp(c * v[i]) * (f0 + integral[i]);
  return out;
}

bool bound_holds(const std::vector<double>& lhs, const std::vector<double>& rhs) {
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (!(lhs[i] <= rhs[i] * (1.0 + 1e-12) + 1e-300)) return false;
  }
  return true;
}

}  // namespace

GronwallReport gronwall_bound_check(const Trajectory& solution, const Trajectory& velocity,
                                    const BesovParams& sigma_params, const Forcing& forcing) {
  sigma_params.validate();
  const double inv_p = std::isinf(sigma_params.p) ? 0.0 : 1.0 / sigma_params.p;
  if (!(sigma_params.s > 1.0 + inv_p)) {
    throw std::invalid_argument("Gronwall check implemented for sigma > 1 + 1/p only");
  }
  const auto& lp = littlewood_paley(solution.grid());
  const BesovParams lower = sigma_params.with_s(sigma_params.s - 1.0);

  GronwallReport report;
  report.times = solution.times();
  const std::size_t m = report.times.size();
  std::vector<double> slope_norm(m), forcing_norm(m, 0.0);
  report.lhs.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double t = report.times[i];
    report.lhs[i] = lp.besov_norm(solution.states()[i], sigma_params);
    slope_norm[i] = lp.besov_norm(derivative(velocity.interpolate(t)), lower);
    if (forcing) forcing_norm[i] = lp.besov_norm(forcing(t), sigma_params);
  }
  report.v_integral = cumulative_trapezoid(report.times, slope_norm);
  const double f0 = report.lhs.front();

  auto holds = [&](double c) {
    return bound_holds(report.lhs, bound_for(c, f0, report.times, report.v_integral, forcing_norm));
  };
  double c = 0.0;
  if (!holds(0.0)) {
    double hi = 1.0;
    while (!holds(hi) && hi < 1e8) hi *= 2.0;
    if (!holds(hi)) {
      report.constant = std::numeric_limits<double>::infinity();
      report.finite = false;
      report.rhs = bound_for(hi, f0, report.times, report.v_integral, forcing_norm);
      return report;
    }
    double lo = 0.0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (holds(mid) ? hi : lo) = mid;
    }
    c = hi;
  }
  report.constant = c;
  report.rhs = bound_for(c, f0, report.times, report.v_integral, forcing_norm);
  return report;
}

}  // namespace chlab
