#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "ltlab/cli/config.hpp"

namespace ltlab::cli {

enum ExitCode : int { kSuccess = 0, kConfigError = 1, kExperimentFailure = 2, kInternalError = 3 };

struct RunOptions {
  std::optional<std::filesystem::path> out_root;  // overrides config.output
  int threads = 0;                                // 0: OpenMP default
  bool verbose = false;
  bool write_record = true;
};

struct RunResult {
  int exit_code = kSuccess;
  bool pass = false;
  std::string message;                 // error text or verdict summary
  std::filesystem::path directory;     // <root>/<experiment>-<hash8>
  std::filesystem::path record;        // run record, when written
  std::vector<std::string> outputs;    // relative to the output root
  nlohmann::json report;
};

/// Runs one experiment, writes report.json and the CSV tables atomically, and
/// appends a run record. Module errors come back as exit codes with the
/// experiment named in the message; nothing is thrown for them.
RunResult run(const ExperimentConfig& config, const RunOptions& options = {});

/// Directory name of a config's outputs: "<experiment>-<first 8 hash digits>".
std::string output_directory_name(const ExperimentConfig& config);

}  // namespace ltlab::cli
