#include "cli.hpp"

#include <chlab/constructions.hpp>
#include <chlab/evolution.hpp>
#include <chlab/experiment_config.hpp>
#include <chlab/experiments.hpp>
#include <chlab/littlewood_paley.hpp>
#include <chlab/plotdata.hpp>
#include <chlab/results_io.hpp>
#include <chlab/trajectory_io.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <map>
#include <string>

namespace chlab::cli {
namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  return {buf, std::to_chars(buf, buf + sizeof buf, v).ptr};
}

double number(const std::string& key, const std::string& text) {
  ExperimentConfig probe;
  apply_setting(probe, key, text);  // reuses the config parser's validation
  if (key == "s") return probe.params.s;
  if (key == "p") return probe.params.p;
  return probe.params.r;
}

struct Options {
  std::map<std::string, std::string> overrides;
  std::string out = "results";
  std::string config;
};

void add_common(CLI::App* app, Options& o) {
  const std::pair<const char*, const char*> keys[] = {
      {"L", "domain half-length (domain is [-L, L))"},
      {"N", "grid points"},
      {"s", "Besov regularity"},
      {"p", "Besov integrability (number or inf)"},
      {"r", "Besov summability (number or inf)"},
      {"n-min", "smallest dyadic index"},
      {"n-max", "largest dyadic index"},
      {"T", "final time"},
      {"dt", "time step"},
      {"seed", "seed for randomized probes"},
      {"trials", "number of random pairs in the product probe"}};
  for (const auto& [flag, help] : keys) {
    std::string key = flag;
    std::replace(key.begin(), key.end(), '-', '_');
    app->add_option_function<std::string>(
        std::string("--") + flag, [&o, key](const std::string& v) { o.overrides[key] = v; }, help);
  }
  app->add_option("--out", o.out, "output directory")->capture_default_str();
  app->add_option("--config", o.config, "config file (key = value, [experiment] sections)");
}

ExperimentConfig config_for(const Options& o, std::string_view experiment) {
  const ConfigFile file = o.config.empty() ? ConfigFile{} : load_config_file(o.config);
  return effective_config(file, experiment, o.overrides);
}

int report(const ExperimentResult& res, const ExperimentConfig& cfg, const Options& o,
           std::ostream& out) {
  const fs::path dir(o.out);
  const auto [csv, json] = persist(res, cfg, dir / res.experiment);
  emit_plotdata(res, dir / "plot");
  int pass = 0, fail = 0, info = 0;
  for (const auto& [name, v] : res.verdicts) {
    (v == Verdict::pass ? pass : v == Verdict::fail ? fail : info)++;
  }
  out << "experiment " << res.experiment << ": " << pass << " pass, " << fail << " fail, " << info
      << " info\n";
  for (const auto& [name, v] : res.verdicts) out << "  " << to_string(v) << "  " << name << "\n";
  out << "  wrote " << csv.string() << " and " << json.string() << "\n";
  return res.passed() ? kExitOk : kExitVerdictFailed;
}

std::string usage_names() {
  std::string s;
  for (const auto& n : experiment_names()) s += (s.empty() ? "" : ", ") + n;
  return s;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Littlewood-Paley / Besov toolkit and Camassa-Holm non-uniform dependence experiments",
               "chlab"};
  app.require_subcommand(1);

  Options opts;

  auto* besov = app.add_subcommand("besov", "Besov norm of a field stored in a binary file");
  std::string input;
  std::size_t index = 0;
  std::string s_text = "2", p_text = "2", r_text = "2";
  besov->add_option("--input", input, "trajectory/field binary file")->required();
  besov->add_option("--index", index, "snapshot index")->capture_default_str();
  besov->add_option("--s", s_text, "regularity")->capture_default_str();
  besov->add_option("--p", p_text, "integrability")->capture_default_str();
  besov->add_option("--r", r_text, "summability")->capture_default_str();

  auto* construct = app.add_subcommand("construct", "Build phi, f_n, g_n, u0, v0 and write them");
  int n_value = 0;
  std::string what = "u0";
  construct->add_option("--n", n_value, "dyadic index")->required();
  construct->add_option("--what", what, "phi, f, g, u0 or v0")
      ->check(CLI::IsMember({"phi", "f", "g", "u0", "v0"}))
      ->capture_default_str();
  add_common(construct, opts);

  auto* solve_cmd = app.add_subcommand("solve", "Integrate CH or DP from a field file or u0 of index n");
  std::string equation = "ch", csv_path;
  int solve_n = 0;
  solve_cmd->add_option("--input", input, "initial field binary file");
  solve_cmd->add_option("--n", solve_n, "use u0 = f_n + g_n as initial data");
  solve_cmd->add_option("--equation", equation, "ch or dp")
      ->check(CLI::IsMember({"ch", "dp"}))
      ->capture_default_str();
  solve_cmd->add_option("--csv", csv_path, "also write the trajectory as CSV");
  add_common(solve_cmd, opts);

  auto* experiment = app.add_subcommand("experiment", "Run one experiment (" + usage_names() + ")");
  std::string name;
  experiment->add_option("name", name, "experiment name")->required();
  add_common(experiment, opts);

  auto* all = app.add_subcommand("all", "Run every experiment");
  add_common(all, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (besov->parsed()) {
      const Trajectory traj = read_trajectory_binary(input);
      if (index >= traj.size()) {
        err << "snapshot index " << index << " out of range (" << traj.size() << " stored)\n";
        return kExitUsage;
      }
      const BesovParams params{number("s", s_text), number("p", p_text), number("r", r_text)};
      out << fmt(besov_norm(traj.states()[index], params)) << "\n";
      return kExitOk;
    }

    if (construct->parsed()) {
      const ExperimentConfig cfg = config_for(opts, "construct");
      const GridSpec grid = cfg.grid();
      Field field = Field::zeros(grid);
      if (what == "phi") {
        field = BumpProfile(grid).phi();
      } else {
        const ConstructionSet set = make_set(n_value, cfg.params, grid);
        field = what == "f" ? set.f : what == "g" ? set.g : what == "u0" ? set.u0 : set.v0;
      }
      fs::create_directories(opts.out);
      const fs::path path = fs::path(opts.out) / (what + "_n" + std::to_string(n_value) + ".bin");
      write_field_binary(field, path);
      out << "wrote " << path.string() << "\n";
      out << "L^p norm  " << fmt(lp_norm(field, cfg.params.p)) << "\n";
      out << "B^s norm  " << fmt(besov_norm(field, cfg.params)) << "\n";
      return kExitOk;
    }

    if (solve_cmd->parsed()) {
      ExperimentConfig cfg = config_for(opts, "solve");
      // a short --T drops the default record times that fall past it
      std::erase_if(cfg.record_times, [&](double t) { return t > cfg.T; });
      Field u0 = Field::zeros(cfg.grid());
      if (!input.empty()) {
        u0 = read_trajectory_binary(input).states().back();
      } else if (solve_n > 0) {
        u0 = make_set(solve_n, cfg.params, cfg.grid()).u0;
      } else {
        err << "solve needs --input or --n\n" << solve_cmd->help();
        return kExitUsage;
      }
      const Equation eq = equation == "dp" ? Equation::degasperis_procesi : Equation::camassa_holm;
      const Trajectory traj = solve(u0, cfg.solver(), eq);
      fs::create_directories(opts.out);
      const fs::path path = fs::path(opts.out) / "trajectory.bin";
      write_trajectory_binary(traj, path);
      if (!csv_path.empty()) write_trajectory_csv(traj, csv_path);
      out << "t mean h1_energy max_slope\n";
      for (std::size_t k = 0; k < traj.size(); ++k) {
        const Diagnostics& d = traj.diagnostics()[k];
        out << fmt(traj.times()[k]) << " " << fmt(d.mean) << " " << fmt(d.h1_energy) << " "
            << fmt(d.max_slope) << "\n";
      }
      out << "wrote " << path.string() << "\n";
      return kExitOk;
    }

    if (experiment->parsed()) {
      const auto& names = experiment_names();
      if (std::find(names.begin(), names.end(), name) == names.end()) {
        err << "unknown experiment '" << name << "'; expected one of: " << usage_names() << "\n"
            << experiment->help();
        return kExitUsage;
      }
      const ExperimentConfig cfg = config_for(opts, name);
      return report(run_experiment(name, cfg), cfg, opts, out);
    }

    if (all->parsed()) {
      int code = kExitOk;
      for (const auto& n : experiment_names()) {
        const ExperimentConfig cfg = config_for(opts, n);
        if (report(run_experiment(n, cfg), cfg, opts, out) != kExitOk) code = kExitVerdictFailed;
      }
      return code;
    }
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    return kExitVerdictFailed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerdictFailed;
  }
  return kExitUsage;
}

}  // namespace chlab::cli
