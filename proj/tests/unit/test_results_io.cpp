#include <chlab/plotdata.hpp>
#include <chlab/results_io.hpp>
#include <chlab/trajectory_io.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

using namespace chlab;
namespace fs = std::filesystem;

namespace {

ExperimentResult sample_result() {
  ExperimentResult r;
  r.experiment = "main";
  r.record(4, 0.0, "D", 0.125);
  r.record(4, 0.1, "D", 0.1 / 3.0);
  r.record(5, 0.1, "D", 1e-300);
  r.record(kAnyN, kAnyTime, "c0", 0.0236191);
  r.record(6, 0.5, "norm_sigma=s-1", -2.5);
  r.record(4, kAnyTime, "D0", 0.0625);
  r.record(5, kAnyTime, "D0", 0.03125);
  r.fits["D0"] = LineFit{-1.0, -0.0, 0.0};
  r.constants["c0"] = 0.0236191;
  r.constants["unbounded"] = std::numeric_limits<double>::infinity();
  r.constants["undefined"] = std::numeric_limits<double>::quiet_NaN();
  r.judge("ok", true);
  r.judge("bad", false);
  r.inform("note");
  r.notes["window"] = "t in [0.05, 0.5]";
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("chlab_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Results, CsvLayout) {
  const std::string csv = results_csv(sample_result());
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "experiment,n,t,norm_name,value");
  EXPECT_NE(csv.find("main,4,0.1,D,0.03333333333333333\n"), std::string::npos);
  EXPECT_NE(csv.find("main,,,c0,0.0236191\n"), std::string::npos);
}

TEST(Results, RoundTripThroughFiles) {
  const fs::path dir = scratch("roundtrip");
  const ExperimentConfig cfg;
  const ExperimentResult r = sample_result();
  persist(r, cfg, dir / "main");
  const StoredResult back = load(dir / "main");
  EXPECT_EQ(back.result, r);
  EXPECT_EQ(back.config, cfg);
  EXPECT_EQ(back.config_digest, cfg.digest());
  EXPECT_TRUE(std::isinf(back.result.constants.at("unbounded")));
  EXPECT_TRUE(std::isnan(back.result.constants.at("undefined")));
  EXPECT_FALSE(back.result.passed());
}

TEST(Results, RerunIsByteIdentical) {
  const fs::path dir = scratch("bytes");
  const ExperimentConfig cfg;
  const auto [csv1, json1] = persist(sample_result(), cfg, dir / "a");
  const auto [csv2, json2] = persist(sample_result(), cfg, dir / "b");
  EXPECT_EQ(slurp(csv1), slurp(csv2));
  EXPECT_EQ(slurp(json1), slurp(json2));
}

TEST(Results, SchemaVersionMismatchRejected) {
  const ExperimentResult r = sample_result();
  const ExperimentConfig cfg;
  std::string json = results_json(r, cfg);
  const std::string key = "\"schema_version\": 1";
  const auto at = json.find(key);
  ASSERT_NE(at, std::string::npos);
  json.replace(at, key.size(), "\"schema_version\": 2");
  try {
    parse_results(results_csv(r), json);
    FAIL() << "expected SchemaVersionError";
  } catch (const SchemaVersionError& e) {
    EXPECT_EQ(e.found(), 2);
  }
  EXPECT_THROW(parse_results("bad header\n", results_json(r, cfg)), std::runtime_error);
  EXPECT_THROW(parse_results(results_csv(r), "{not json"), std::runtime_error);
}

TEST(Plotdata, EmptyResultWritesNothing) {
  const fs::path dir = scratch("plot_empty");
  ExperimentResult empty;
  empty.experiment = "scaling";
  EXPECT_TRUE(emit_plotdata(empty, dir / "plot").empty());
}

TEST(Plotdata, FilesAndDeterminism) {
  const fs::path dir = scratch("plot");
  const auto first = emit_plotdata(sample_result(), dir / "one");
  const auto second = emit_plotdata(sample_result(), dir / "two");
  ASSERT_FALSE(first.empty());
  ASSERT_EQ(first.size(), second.size());
  EXPECT_TRUE(std::is_sorted(first.begin(), first.end()));
  for (std::size_t i = 0; i < first.size(); ++i) {
    EXPECT_EQ(first[i].filename(), second[i].filename());
    EXPECT_EQ(slurp(first[i]), slurp(second[i]));
  }
  EXPECT_EQ(slurp(dir / "one" / "main_D_n4.dat"), "# t D\n0 0.125\n0.1 0.03333333333333333\n");
  EXPECT_EQ(slurp(dir / "one" / "main_D0_vs_n.dat"), "# n D0 fit\n4 0.0625 0.0625\n5 0.03125 0.03125\n");
  EXPECT_EQ(slurp(dir / "one" / "main_distance_nmax.dat").rfind("# t D(n_max,t) c0*t\n0.1 1e-300 ", 0), 0u);
}

TEST(TrajectoryBinary, RoundTripAndLayout) {
  const GridSpec g(3.0, 16);
  std::vector<Field> states;
  for (int k = 0; k < 3; ++k) {
    states.push_back(Field::from_function(g, [k](double x) { return std::sin(x + k) / 3.0; }));
  }
  const Trajectory traj({0.0, 0.1, 0.25}, states);
  const std::string bytes = trajectory_binary(traj);
  EXPECT_EQ(bytes.size(), 8u + 4u + 4u + 8u + 8u + 8u + 3u * 8u + 3u * 16u * 8u);
  EXPECT_EQ(bytes.substr(0, 8), "CHLABTRJ");
  const Trajectory back = parse_trajectory_binary(bytes);
  EXPECT_EQ(back.times(), traj.times());
  EXPECT_EQ(back.grid(), g);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(back.states()[k], traj.states()[k]);

  std::string bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(parse_trajectory_binary(bad), std::runtime_error);
  EXPECT_THROW(parse_trajectory_binary(bytes.substr(0, bytes.size() - 1)), std::runtime_error);
  EXPECT_THROW(parse_trajectory_binary(bytes + "x"), std::runtime_error);
  std::string version = bytes;
  version[8] = 9;
  EXPECT_THROW(parse_trajectory_binary(version), std::runtime_error);
}

TEST(TrajectoryCsv, Header) {
  const GridSpec g(3.0, 16);
  const Trajectory traj({0.0}, {Field::zeros(g)});
  const std::string csv = trajectory_csv(traj);
  EXPECT_EQ(csv.substr(0, 6), "t,x,u\n");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 17);
}
