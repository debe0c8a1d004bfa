#pragma once

// One experiment = one command of the algpaths tool. The config round-trips
// through JSON and is embedded in every report.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "algpaths/serialize.hpp"

namespace algpaths {

inline constexpr const char* kToolVersion = "0.1.0";

struct ExperimentConfig {
  /// decompose, connect, verify, line, distance, mindeg, sample or suite
  std::string command;
  std::string roots = "0,1";
  int dim = 0;
  std::string sig, sig2;
  /// exp-local, exp-global, polygonal, poly or selfadjoint
  std::string method = "exp-global";
  std::optional<std::uint64_t> seed;
  /// restarts for distance/mindeg/poly, sample count for sample; 0 = default
  int budget = 0;
  int max_degree = 6;
  bool self_adjoint = false;
  ToleranceConfig tol;
  /// JSON file with "matrix", or "a" and "b", or a path
  std::string input;
  std::string out;
  /// json or csv
  std::string format = "json";
  /// suite subset; empty runs everything
  std::vector<int> criteria;
};

Json to_json(const ExperimentConfig& cfg);
/// Fields missing from `j` keep their value in `base`.
ExperimentConfig config_from_json(const Json& j, ExperimentConfig base = {});

struct RunOutput {
  int exit_code = 0;
  /// Report in the requested format.
  std::string report;
  /// Human-readable lines for the diagnostic stream (pass/fail table, errors).
  std::string diagnostics;
};

/// Exit 0 on success, 2 on a failed certificate, 3 on a precondition error.
RunOutput run(const ExperimentConfig& cfg);

/// CSV column sets per command, for --help.
std::string csv_columns_help();

}  // namespace algpaths
