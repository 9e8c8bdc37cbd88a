#pragma once

// Plot-ready text files (whitespace-separated columns, '#' header line).

#include <chlab/experiments.hpp>

#include <filesystem>
#include <vector>

namespace chlab {

/// Writes into `dir` (created if missing):
///   <experiment>_<name>_n<n>.dat   t  value            per (name, n) time series
///   <experiment>_<name>_vs_n.dat   n  value  [fit]     per name over n; the third
///                                                      column is 2^{intercept + slope·n}
///                                                      when a rate fit exists
///   main_distance_nmax.dat         t  D(n_max,t)  c0·t  (main experiment only)
/// An empty result writes nothing. Returns the files written, sorted.
std::vector<std::filesystem::path> emit_plotdata(const ExperimentResult& result,
                                                 const std::filesystem::path& dir);

}  // namespace chlab
