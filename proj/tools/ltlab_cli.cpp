#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "ltlab/cli/config.hpp"
#include "ltlab/cli/records.hpp"
#include "ltlab/cli/runner.hpp"

namespace {

int list_runs_command(const std::string& dir) {
  try {
    const auto runs = ltlab::cli::list_runs(dir);
    for (const auto& r : runs) {
      if (r.corrupted) {
        std::cout << r.file.filename().string() << "  WARNING " << r.warning << "\n";
        continue;
      }
      std::cout << r.file.filename().string() << "  " << r.record.started_at << "  " << r.record.experiment << "  "
                << r.record.config_hash.substr(0, 12) << "  seed " << r.record.seed << "  exit "
                << r.record.exit_code << "  " << (r.record.pass ? "pass" : "fail") << "\n";
    }
    return ltlab::cli::kSuccess;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ltlab::cli::kConfigError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local-time law verification toolkit"};
  std::string experiment;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  int threads = 0;
  bool verbose = false;
  std::string list_dir;

  app.add_option("experiment", experiment,
                 "Experiment name; must match the config (simulate, localtime, moments, scaling, chung, tails, lnd, "
                 "charfn, analytics, berman, sde-convergence)");
  app.add_option("--config", config_path, "Experiment config (YAML, or JSON with a .json extension)");
  app.add_option("--seed", seed, "Master seed, overrides the config");
  app.add_option("--out", out_dir, "Output root, overrides the config");
  app.add_option("--threads", threads, "Worker threads (wall time only)")->check(CLI::NonNegativeNumber);
  app.add_flag("--verbose", verbose, "Progress on stderr");
  app.add_option("--list-runs", list_dir, "Print the run index of an output root and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ltlab::cli::kSuccess : ltlab::cli::kConfigError;
  }

  if (!list_dir.empty()) return list_runs_command(list_dir);
  if (config_path.empty()) {
    std::cerr << "error: --config is required\n" << app.help();
    return ltlab::cli::kConfigError;
  }

  ltlab::cli::ExperimentConfig config;
  try {
    config = ltlab::cli::load_config(config_path, seed);
    if (!experiment.empty() && ltlab::cli::experiment_from_string(experiment) != config.experiment)
      throw ltlab::cli::ConfigError("experiment: command line asks for '" + experiment + "' but the config runs '" +
                                    ltlab::cli::to_string(config.experiment) + "'");
  } catch (const ltlab::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return ltlab::cli::kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return ltlab::cli::kConfigError;
  }

  ltlab::cli::RunOptions opts;
  if (!out_dir.empty()) opts.out_root = out_dir;
  opts.threads = threads;
  opts.verbose = verbose;
  try {
    const auto res = ltlab::cli::run(config, opts);
    std::ostream& os = res.exit_code == ltlab::cli::kSuccess ? std::cout : std::cerr;
    os << ltlab::cli::to_string(config.experiment) << ": " << (res.pass ? "PASS" : "FAIL") << "  " << res.message
       << "\n";
    if (!res.directory.empty() && res.exit_code != ltlab::cli::kConfigError)
      std::cout << "outputs: " << res.directory.string() << "\n";
    return res.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return ltlab::cli::kInternalError;
  }
}
