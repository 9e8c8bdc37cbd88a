#include <chlab/results_io.hpp>

#include "text_format.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace chlab {

using nlohmann::ordered_json;

namespace {

// Non-finite numbers are not valid JSON; they are stored as strings.
ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return detail::format_double(v);
}

double read_number(const ordered_json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    if (auto v = detail::parse_double(j.get<std::string>())) return *v;
  }
  throw std::runtime_error("malformed number in result JSON");
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string results_csv(const ExperimentResult& result) {
  std::string out = "experiment,n,t,norm_name,value\n";
  for (const NormRecord& r : result.records) {
    out += r.experiment;
    out += ',';
    if (r.n != kAnyN) out += std::to_string(r.n);
    out += ',';
    if (!std::isnan(r.t)) out += detail::format_double(r.t);
    out += ',';
    out += r.name;
    out += ',';
    out += detail::format_double(r.value);
    out += '\n';
  }
  return out;
}

std::string results_json(const ExperimentResult& result, const ExperimentConfig& cfg) {
  ordered_json j;
  j["schema_version"] = kResultSchemaVersion;
  j["experiment"] = result.experiment;
  j["config_digest"] = cfg.digest();
  ordered_json config = ordered_json::object();
  const auto values = cfg.canonical_values();
  for (const auto& key : config_keys()) config[key] = values.at(key);
  j["config"] = config;
  ordered_json verdicts = ordered_json::object();
  for (const auto& [name, v] : result.verdicts) verdicts[name] = to_string(v);
  j["verdicts"] = verdicts;
  ordered_json fits = ordered_json::object();
  for (const auto& [name, f] : result.fits) {
    fits[name] = {{"slope", number(f.slope)}, {"intercept", number(f.intercept)},
                  {"residual", number(f.residual)}};
  }
  j["fits"] = fits;
  ordered_json constants = ordered_json::object();
  for (const auto& [name, v] : result.constants) constants[name] = number(v);
  j["constants"] = constants;
  ordered_json notes = ordered_json::object();
  for (const auto& [name, text] : result.notes) notes[name] = text;
  j["notes"] = notes;
  j["passed"] = result.passed();
  return j.dump(2) + "\n";
}

std::pair<std::filesystem::path, std::filesystem::path> persist(const ExperimentResult& result,
                                                                const ExperimentConfig& cfg,
                                                                const std::filesystem::path& stem) {
  if (stem.has_parent_path()) std::filesystem::create_directories(stem.parent_path());
  std::filesystem::path csv = stem, json = stem;
  csv += ".csv";
  json += ".json";
  write_file(csv, results_csv(result));
  write_file(json, results_json(result, cfg));
  return {csv, json};
}

StoredResult parse_results(const std::string& csv, const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed result JSON: ") + e.what());
  }
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer()) {
    throw std::runtime_error("result JSON lacks schema_version");
  }
  const int version = j["schema_version"].get<int>();
  if (version != kResultSchemaVersion) throw SchemaVersionError(version, kResultSchemaVersion);

  StoredResult stored;
  try {
    ExperimentResult& r = stored.result;
    r.experiment = j.at("experiment").get<std::string>();
    stored.config_digest = j.at("config_digest").get<std::string>();
    for (const auto& [key, value] : j.at("config").items()) {
      apply_setting(stored.config, key, value.get<std::string>());
    }
    for (const auto& [name, v] : j.at("verdicts").items()) {
      r.verdicts[name] = parse_verdict(v.get<std::string>());
    }
    for (const auto& [name, f] : j.at("fits").items()) {
      r.fits[name] = {read_number(f.at("slope")), read_number(f.at("intercept")),
                      read_number(f.at("residual"))};
    }
    for (const auto& [name, v] : j.at("constants").items()) r.constants[name] = read_number(v);
    for (const auto& [name, v] : j.at("notes").items()) r.notes[name] = v.get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed result JSON: ") + e.what());
  }

  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != "experiment,n,t,norm_name,value") {
    throw std::runtime_error("result CSV has an unexpected header");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    const std::string where = "result CSV line " + std::to_string(line_no);
    if (cells.size() != 5) throw std::runtime_error(where + ": expected 5 cells");
    NormRecord rec;
    rec.experiment = cells[0];
    if (!cells[1].empty()) {
      const auto n = detail::parse_integer<int>(cells[1]);
      if (!n) throw std::runtime_error(where + ": bad n");
      rec.n = *n;
    }
    if (!cells[2].empty()) {
      const auto t = detail::parse_double(cells[2]);
      if (!t) throw std::runtime_error(where + ": bad t");
      rec.t = *t;
    }
    rec.name = cells[3];
    const auto v = detail::parse_double(cells[4]);
    if (!v) throw std::runtime_error(where + ": bad value");
    rec.value = *v;
    stored.result.records.push_back(std::move(rec));
  }
  return stored;
}

StoredResult load(const std::filesystem::path& stem) {
  std::filesystem::path csv = stem, json = stem;
  csv += ".csv";
  json += ".json";
  return parse_results(read_file(csv), read_file(json));
}

}  // namespace chlab
