#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cosetlab/scalar.hpp"

namespace cosetlab {

inline constexpr const char* kToolVersion = "cosetlab 0.1.0";

/// Exit codes of the runner: 0 success (including budget-limited or
/// inconclusive rows, which are recorded in the output), 2 configuration
/// error, 3 hard budget overflow, 4 failed assertion-class invariant.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitBudget = 3,
  kExitAssertion = 4,
};

struct RunResult {
  int exit_code = kExitOk;
  std::string message;
  std::vector<std::string> output_files;
};

/// Parses, validates and runs one experiment described by a JSON config.
/// Unknown fields are rejected. Deterministic given (config, seed): two runs
/// produce byte-identical output files.
RunResult run_experiment(const nlohmann::json& config, const std::string& out_dir);

/// Convenience wrapper: load the config from a file, apply command line
/// overrides, run, report.
RunResult run_experiment_file(const std::string& config_path, const std::string& out_dir,
                              const nlohmann::json& overrides);

}  // namespace cosetlab
