#include <chlab/plotdata.hpp>

#include "text_format.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>

namespace chlab {
namespace {

std::string sanitize(const std::string& name) {
  std::string out = name;
  for (char& c : out) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '+' ||
                    c == '=' || c == '.';
    if (!ok) c = '_';
  }
  return out;
}

void write(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

std::vector<std::filesystem::path> emit_plotdata(const ExperimentResult& result,
                                                 const std::filesystem::path& dir) {
  using detail::format_double;
  if (result.records.empty()) return {};
  std::filesystem::create_directories(dir);

  std::map<std::pair<std::string, int>, std::vector<std::pair<double, double>>> series;
  std::map<std::string, std::vector<std::pair<int, double>>> by_n;
  for (const NormRecord& r : result.records) {
    if (r.n != kAnyN && !std::isnan(r.t)) series[{r.name, r.n}].emplace_back(r.t, r.value);
    if (r.n != kAnyN && std::isnan(r.t)) by_n[r.name].emplace_back(r.n, r.value);
  }

  std::vector<std::filesystem::path> written;
  const std::string prefix = sanitize(result.experiment) + "_";
  for (auto& [key, points] : series) {
    std::sort(points.begin(), points.end());
    std::string text = "# t " + key.first + "\n";
    for (const auto& [t, v] : points) text += format_double(t) + " " + format_double(v) + "\n";
    const auto path = dir / (prefix + sanitize(key.first) + "_n" + std::to_string(key.second) + ".dat");
    write(path, text);
    written.push_back(path);
  }
  for (auto& [name, points] : by_n) {
    std::sort(points.begin(), points.end());
    const auto fit = result.fits.find(name);
    std::string text = "# n " + name + (fit != result.fits.end() ? " fit\n" : "\n");
    for (const auto& [n, v] : points) {
      text += std::to_string(n) + " " + format_double(v);
      if (fit != result.fits.end()) {
        text += " " + format_double(std::exp2(fit->second.intercept + fit->second.slope * n));
      }
      text += "\n";
    }
    const auto path = dir / (prefix + sanitize(name) + "_vs_n.dat");
    write(path, text);
    written.push_back(path);
  }
  if (result.experiment == "main" && result.constants.count("c0")) {
    int n_max = kAnyN;
    for (const NormRecord& r : result.records) {
      if (r.name == "D") n_max = std::max(n_max, r.n);
    }
    const auto it = series.find({"D", n_max});
    if (it != series.end()) {
      const double c0 = result.constants.at("c0");
      std::string text = "# t D(n_max,t) c0*t\n";
      for (const auto& [t, v] : it->second) {
        text += format_double(t) + " " + format_double(v) + " " + format_double(c0 * t) + "\n";
      }
      const auto path = dir / "main_distance_nmax.dat";
      write(path, text);
      written.push_back(path);
    }
  }
  std::sort(written.begin(), written.end());
  return written;
}

}  // namespace chlab
