#pragma once

// Persistence of experiment results: a CSV of every recorded norm and a
// JSON summary (config echo, verdicts, fits, constants, notes).
//
// CSV: header `experiment,n,t,norm_name,value`; n and t are empty when the
// record is not tied to one n or time; numbers use the shortest text that
// parses back to the same double.

#include <chlab/experiment_config.hpp>
#include <chlab/experiments.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>

namespace chlab {

inline constexpr int kResultSchemaVersion = 1;

class SchemaVersionError : public std::runtime_error {
 public:
  SchemaVersionError(int found, int expected)
      : std::runtime_error("result schema version " + std::to_string(found) + " is not supported (expected " +
                           std::to_string(expected) + ")"),
        found_(found) {}
  int found() const noexcept { return found_; }

 private:
  int found_;
};

std::string results_csv(const ExperimentResult& result);
std::string results_json(const ExperimentResult& result, const ExperimentConfig& cfg);

struct StoredResult {
  ExperimentResult result;
  ExperimentConfig config;
  std::string config_digest;
};

/// Writes `<stem>.csv` and `<stem>.json`; throws std::runtime_error on IO
/// failure. Returns the two paths.
std::pair<std::filesystem::path, std::filesystem::path> persist(const ExperimentResult& result,
                                                                const ExperimentConfig& cfg,
                                                                const std::filesystem::path& stem);

/// Reads the pair written by persist(). Throws SchemaVersionError on a
/// version mismatch and std::runtime_error on malformed input.
StoredResult load(const std::filesystem::path& stem);

StoredResult parse_results(const std::string& csv, const std::string& json);

}  // namespace chlab
