// Acceptance checks at the default desk-scale configuration. Prints one
// PASS/FAIL line per criterion; `--criterion k` runs a single one.

#include <chlab/constructions.hpp>
#include <chlab/evolution.hpp>
#include <chlab/experiments.hpp>
#include <chlab/littlewood_paley.hpp>
#include <chlab/results_io.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace chlab;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

class Report {
 public:
  void check(bool ok, const std::string& what) {
    ok_ = ok_ && ok;
    if (!ok) failures_.push_back(what);
    lines_.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  bool ok() const { return ok_; }
  const std::vector<std::string>& lines() const { return lines_; }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  bool ok_ = true;
  std::vector<std::string> lines_, failures_;
};

std::string num(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

template <typename F>
double simpson(F&& f, double a, double b, int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

// Values of one named record over n (time-independent records).
std::vector<double> by_n(const ExperimentResult& r, const std::string& name, const std::vector<int>& ns) {
  std::vector<double> out;
  for (int n : ns) out.push_back(r.value(n, kAnyTime, name));
  return out;
}

// Least-squares slope of y against x, computed here rather than taken from
// the library fits.
double slope_of(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

double log2_slope(const std::vector<int>& ns, const std::vector<double>& values) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    x.push_back(ns[i]);
    y.push_back(std::log2(values[i]));
  }
  return slope_of(x, y);
}

bool within_factor(double a, double b, double factor) {
  if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b < 0.0) return false;
  if (a == b) return true;
  const double lo = std::min(a, b), hi = std::max(a, b);
  return lo > 0.0 && hi <= factor * lo;
}

// ---------------------------------------------------------------------------

Report criterion_1(const ExperimentConfig& cfg) {
  Report rep;
  const GridSpec grid = cfg.grid();
  const auto& lp = littlewood_paley(grid);
  const double defect = lp.partition_defect();
  rep.check(defect <= 1e-12, "partition defect " + num(defect) + " <= 1e-12");

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<std::size_t> band(1, grid.dealias_cutoff());
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t K = band(rng);
    std::vector<Complex> c(grid.size(), Complex(0.0));
    for (std::size_t k = 0; k <= K; ++k) {
      c[k] = Complex(normal(rng), k == 0 ? 0.0 : normal(rng));
      if (k > 0) c[grid.size() - k] = std::conj(c[k]);
    }
    const Field u = to_field(Spectrum(grid, std::move(c)));
    const Field sum = lp.decompose(u).sum();
    worst = std::max(worst, lp_norm(sum - u, 2.0) / lp_norm(u, 2.0));
  }
  rep.check(worst <= 1e-10, "worst reconstruction error over 100 fields " + num(worst) + " <= 1e-10");
  return rep;
}

Report criterion_2(const ExperimentConfig& cfg) {
  Report rep;
  const ExperimentResult r = exp_besov_scaling(cfg);
  const auto ns = cfg.n_values();
  const double s = cfg.params.s;
  const double phi_l2 = lp_norm(BumpProfile(cfg.grid()).phi(), 2.0);
  double off = 0.0;
  for (double v : by_n(r, "off_block_ratio", ns)) off = std::max(off, v);
  rep.check(off <= 1e-10, "max off-block ratio " + num(off) + " <= 1e-10");
  const char* names[3] = {"f_norm_sigma=s-1", "f_norm_sigma=s", "f_norm_sigma=s+1"};
  for (int k = 0; k < 3; ++k) {
    const double sigma = s + k - 1;
    const auto values = by_n(r, names[k], ns);
    const double slope = log2_slope(ns, values);
    rep.check(std::abs(slope - (sigma - s)) <= 0.05,
              std::string(names[k]) + " slope " + num(slope) + " within 0.05 of " + num(sigma - s));
    bool bound_ok = true;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      bound_ok = bound_ok && values[i] <= std::exp2(ns[i] * (sigma - s)) * phi_l2 * (1.0 + 1e-12);
    }
    rep.check(bound_ok, std::string(names[k]) + " <= 2^{n(sigma-s)} ||phi||_2 for every n");
  }
  return rep;
}

Report criterion_3(const ExperimentConfig& cfg) {
  Report rep;
  double full = 0.0;
  for (int k = 1; k <= 1000; ++k) full = std::max(full, std::abs(cos_mean(2.0, k * pi) - 0.5));
  rep.check(full <= 4.0 * std::numeric_limits<double>::epsilon(),
            "max |cos_mean(2, k pi) - 1/2| over k <= 1000: " + num(full));
  bool rate = true;
  double worst_scaled = 0.0;
  for (double X = 1.0; X <= 1e6; X *= 1.7) {
    const double err = std::abs(cos_mean(1.0, X) - 2.0 / pi);
    worst_scaled = std::max(worst_scaled, err * X);
    rate = rate && err <= 5.0 / X;
  }
  rep.check(rate, "|cos_mean(1, X) - 2/pi| <= 5/X, worst X*err " + num(worst_scaled));

  // ½‖φ²‖₂² with φ(x) = (1/π)∫_0^{1/2} φ̂(ξ)cos(xξ)dξ on the line
  auto phi = [](double x) {
    return simpson([x](double xi) { return bump_hat(xi) * std::cos(x * xi); }, 0.0, 0.5, 1000) / pi;
  };
  const double half_phi2 = 0.5 * simpson([&](double x) { return std::pow(phi(x), 4); }, -256.0, 256.0, 8192);
  for (int n = 6; n <= cfg.n_max; ++n) {
    const double m = lemma_M_quantity(n, 2.0, cfg.grid());
    const double rel = std::abs(m * m / half_phi2 - 1.0);
    rep.check(rel <= 0.05, "n=" + std::to_string(n) + " M^2 vs half ||phi^2||^2 relative gap " + num(rel));
  }
  return rep;
}

Report criterion_4(const ExperimentConfig& cfg) {
  Report rep;
  const ExperimentResult r = exp_lower_bounds(cfg);
  const auto ns = cfg.n_values();
  double residual = 0.0;
  for (double v : by_n(r, "gdf_identity_residual", ns)) residual = std::max(residual, v);
  rep.check(residual <= 1e-10, "single-block identity residual " + num(residual) + " <= 1e-10");
  std::vector<double> top;
  for (int n : {6, 7, 8}) top.push_back(r.value(n, kAnyTime, "gdf_besov_sup"));
  const double lo = *std::min_element(top.begin(), top.end());
  const double hi = *std::max_element(top.begin(), top.end());
  rep.check(lo > 0.0, "M_tilde over n in {6,7,8} positive (min " + num(lo) + ")");
  rep.check((hi - lo) / lo <= 0.10, "M_tilde spread over n in {6,7,8} " + num((hi - lo) / lo) + " <= 0.10");
  return rep;
}

Report criterion_5(const ExperimentConfig& cfg) {
  Report rep;
  // conservation on the experiment data at the largest n
  const ConstructionSet set = make_set(cfg.n_max, cfg.params, cfg.grid());
  SolverConfig sc = cfg.solver();
  const Trajectory traj = solve(set.u0, sc, Equation::camassa_holm);
  const Diagnostics& d0 = traj.diagnostics().front();
  double mean_drift = 0.0, energy_drift = 0.0;
  for (const Diagnostics& d : traj.diagnostics()) {
    mean_drift = std::max(mean_drift, std::abs(d.mean - d0.mean) / std::abs(d0.mean));
    energy_drift = std::max(energy_drift, std::abs(d.h1_energy - d0.h1_energy) / d0.h1_energy);
  }
  rep.check(mean_drift <= 1e-8, "relative drift of integral of u over T=0.5: " + num(mean_drift));
  rep.check(energy_drift <= 1e-8, "relative drift of H1 energy over T=0.5: " + num(energy_drift));

  // dt refinement on an O(1) wave
  const GridSpec small(pi, 64);
  const Field wave = Field::from_function(small, [](double x) {
    return 0.4 * std::sin(x) + 0.2 * std::cos(2.0 * x) - 0.1 * std::sin(3.0 * x) + 0.05;
  });
  auto run = [&](double dt) {
    SolverConfig c;
    c.final_time = 0.4;
    c.dt = dt;
    return solve(wave, c, Equation::camassa_holm).states().back();
  };
  const Field ref = run(0.02 / 64);
  std::vector<double> err;
  for (double dt : {0.02, 0.01, 0.005}) err.push_back(lp_norm(run(dt) - ref, kInfinity));
  const double order = std::min(std::log2(err[0] / err[1]), std::log2(err[1] / err[2]));
  rep.check(order >= 3.8, "RK4 observed order " + num(order) + " >= 3.8");

  // transport by a constant velocity is a pure shift
  const double c = 0.7, T = 1.0;
  auto profile = [](double x) { return std::sin(x) + 0.3 * std::cos(3.0 * x); };
  const Field f0 = Field::from_function(small, profile);
  SolverConfig tc;
  tc.final_time = T;
  tc.dt = 0.002;
  const Trajectory moved = solve_transport(f0, steady_trajectory(Field::constant(small, c), T), {}, tc);
  const Field exact = Field::from_function(small, [&](double x) { return profile(x - c * T); });
  const double shift_err = lp_norm(moved.states().back() - exact, kInfinity);
  rep.check(shift_err <= 1e-8, "translation error " + num(shift_err) + " <= 1e-8");
  return rep;
}

Report criterion_6(const ExperimentConfig& cfg) {
  Report rep;
  const ExperimentResult r = exp_prop1(cfg);
  const auto ns = cfg.n_values();
  const double s = cfg.params.s;
  const double bound = -(s - 1.5) / 2.0 + 0.15;
  const double dist = log2_slope(ns, by_n(r, "sup_dist_Bs", ns));
  rep.check(dist <= bound, "sup_t dist slope " + num(dist) + " <= " + num(bound));
  const double up = log2_slope(ns, by_n(r, "sup_norm_Bs+1", ns));
  rep.check(std::abs(up - 1.0) <= 0.15, "B^{s+1} slope " + num(up) + " within 0.15 of 1");
  const double lo = log2_slope(ns, by_n(r, "sup_norm_Bs-1", ns));
  rep.check(std::abs(lo + 1.0) <= 0.15, "B^{s-1} slope " + num(lo) + " within 0.15 of -1");
  return rep;
}

Report criterion_7(const ExperimentConfig& cfg) {
  Report rep;
  const ExperimentResult r = exp_prop2(cfg);
  const auto ns = cfg.n_values();
  const double s = cfg.params.s;
  if (r.constants.count("two_term_residual")) {
    const double res = r.constants.at("two_term_residual");
    rep.check(res <= 0.10, "two-term fit residual " + num(res) + " <= 0.10");
    const double b = log2_slope(ns, by_n(r, "two_term_b", ns));
    const double bound = -std::min(s - 1.5, 1.0) + 0.15;
    rep.check(b <= bound, "b(n) slope " + num(b) + " <= " + num(bound));
  } else {
    rep.check(false, "two-term fit could not be formed");
  }
  std::vector<double> t = cfg.small_times;
  std::sort(t.begin(), t.end());
  for (int n : ns) {
    std::vector<double> lt, lw;
    for (double ti : t) {
      lt.push_back(std::log2(ti));
      lw.push_back(std::log2(r.value(n, ti, "w_Bs")));
    }
    const double slope = slope_of(lt, lw);
    rep.check(std::abs(slope - 2.0) <= 0.1,
              "n=" + std::to_string(n) + " small-t slope of ||w_n|| " + num(slope) + " within 0.1 of 2");
  }
  return rep;
}

Report criterion_8(const ExperimentConfig& cfg) {
  Report rep;
  const ExperimentResult r = exp_main(cfg);
  const auto ns = cfg.n_values();
  const int n = cfg.n_max;
  const double s = cfg.params.s;
  std::vector<double> d0;
  for (int k : ns) d0.push_back(r.value(k, 0.0, "D"));
  const double slope = log2_slope(ns, d0);
  rep.check(std::abs(slope + 1.0) <= 0.1, "D(n,0) slope " + num(slope) + " within 0.1 of -1");

  double c0 = std::numeric_limits<double>::infinity();
  for (double t : cfg.record_times) {
    if (t >= 0.05 && t <= 0.5) c0 = std::min(c0, r.value(n, t, "D") / t);
  }
  rep.check(c0 > 0.0 && std::isfinite(c0), "c0 = min D(" + std::to_string(n) + ",t)/t on [0.05,0.5] = " + num(c0));
  const double lead = r.value(n, kAnyTime, "g_df_Bs_inf");
  rep.check(within_factor(c0, lead, 2.0), "c0 vs ||g_n f_n'||_{B^s_{2,inf}} = " + num(lead) + " within factor 2");
  const double g = r.value(n, kAnyTime, "g_Bs");
  const double bound = std::exp2(-n) * std::exp2(-s) * (12.0 / 17.0) * lp_norm(BumpProfile(cfg.grid()).phi(), 2.0);
  rep.check(g <= bound * (1.0 + 1e-6), "||g_n||_{B^s} " + num(g) + " <= " + num(bound) + " (1 + 1e-6)");
  return rep;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Report criterion_9(const ExperimentConfig& cfg) {
  Report rep;
  const fs::path root = fs::temp_directory_path() / "chlab_acceptance_determinism";
  fs::remove_all(root);
  for (const auto& name : experiment_names()) {
    std::pair<fs::path, fs::path> files[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path dir = root / ("run" + std::to_string(run));
      fs::create_directories(dir);
      files[run] = persist(run_experiment(name, cfg), cfg, dir / name);
    }
    const bool same = slurp(files[0].first) == slurp(files[1].first) &&
                      slurp(files[0].second) == slurp(files[1].second);
    rep.check(same, name + " CSV and JSON byte-identical across two runs");
  }
  fs::remove_all(root);
  return rep;
}

Report criterion_10(const ExperimentConfig& cfg) {
  Report rep;
  const ExperimentResult products = exp_product_estimates(cfg, cfg.trials);
  for (const char* name : {"negative_index", "algebra", "nonlocal_lipschitz"}) {
    const double a = products.constants.at(std::string("empirical_C_") + name);
    const double b = products.constants.at(std::string("empirical_C_") + name + "_N_doubled");
    rep.check(std::isfinite(a) && a > 0.0, std::string(name) + " constant " + num(a) + " finite");
    rep.check(within_factor(a, b, 2.0), std::string(name) + " N-doubled " + num(b) + " within 2x");
  }
  const ExperimentResult transport = exp_transport(cfg);
  for (const char* kind : {"homogeneous", "forced"}) {
    const double a = transport.constants.at(std::string("gronwall_C_") + kind + "_dt");
    const double b = transport.constants.at(std::string("gronwall_C_") + kind + "_dt_half");
    rep.check(std::isfinite(a) && std::isfinite(b), std::string(kind) + " transport constant " + num(a) + " finite");
    rep.check(within_factor(a, b, 2.0), std::string(kind) + " dt-halved " + num(b) + " within 2x");
  }
  return rep;
}

const std::vector<std::pair<std::string, std::function<Report(const ExperimentConfig&)>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Report(const ExperimentConfig&)>>> list{
      {"partition of unity and reconstruction", criterion_1},
      {"dyadic scaling of f_n", criterion_2},
      {"cos_mean mechanics and M_n", criterion_3},
      {"single-block identity and M_tilde", criterion_4},
      {"solver self-validation", criterion_5},
      {"distance of S_t f_n from f_n", criterion_6},
      {"second-order expansion of S_t u0", criterion_7},
      {"non-uniform dependence lower bound", criterion_8},
      {"determinism", criterion_9},
      {"product and transport constants", criterion_10},
  };
  return list;
}

bool run_one(int k, const ExperimentConfig& cfg, bool verbose) {
  const auto& [title, fn] = criteria()[static_cast<std::size_t>(k - 1)];
  Report rep;
  try {
    rep = fn(cfg);
  } catch (const std::exception& e) {
    rep.check(false, std::string("exception: ") + e.what());
  }
  std::cout << "criterion " << k << " " << (rep.ok() ? "PASS" : "FAIL") << "  " << title;
  if (!rep.ok()) std::cout << "  [" << rep.failures().front() << "]";
  std::cout << "\n";
  if (verbose) {
    for (const auto& line : rep.lines()) std::cout << "    " << line << "\n";
  }
  std::cout.flush();
  return rep.ok();
}

}  // namespace

int main(int argc, char** argv) {
  const ExperimentConfig cfg;
  const int count = static_cast<int>(criteria().size());
  if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) {
    const int k = std::atoi(argv[2]);
    if (k < 1 || k > count) {
      std::cerr << "criterion must be 1.." << count << "\n";
      return 2;
    }
    return run_one(k, cfg, true) ? 0 : 1;
  }
  if (argc != 1) {
    std::cerr << "usage: acceptance [--criterion k]\n";
    return 2;
  }
  bool all = true;
  for (int k = 1; k <= count; ++k) all = run_one(k, cfg, false) && all;
  return all ? 0 : 1;
}
