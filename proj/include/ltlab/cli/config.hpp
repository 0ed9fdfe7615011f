#pragma once

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>

#include "ltlab/core/grid.hpp"
#include "ltlab/core/process.hpp"

namespace ltlab::cli {

enum class Experiment {
  simulate,
  localtime,
  moments,
  scaling,
  chung,
  tails,
  lnd,
  charfn,
  analytics,
  berman,
  sde_convergence
};

std::string to_string(Experiment e);

/// Schema violation; the message starts with the offending field path.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

Experiment experiment_from_string(const std::string& name);

struct EstimatorConfig {
  std::string kind = "histogram";  // histogram | fourier
  double bin_factor = 2.0;
  double bin_width = 0.0;          // 0: bin_factor·Δ^α
  bool resolution_clamp = true;
  double cutoff = 0.0;             // fourier Ξ; 0: Δ^{−α}
  double freq_step = 0.0;          // fourier δξ; 0: automatic
};

/// Validated experiment description. `params` and `canonical` carry every
/// value with defaults filled in, so the canonical document alone reproduces
/// the run.
struct ExperimentConfig {
  Experiment experiment = Experiment::simulate;
  ProcessSpec process;
  TimeGrid grid{0.0, 1.0, 1024};
  EstimatorConfig estimator;
  std::size_t replicas = 1;
  std::uint64_t seed = 0;
  std::string output = "out";
  nlohmann::json params;
  nlohmann::json canonical;  // without the output directory

  /// SHA-256 of the compact canonical document, lowercase hex.
  std::string hash() const;
};

/// Parses YAML, or JSON when the extension is .json.
nlohmann::json load_config_document(const std::filesystem::path& path);
/// Same for in-memory text; `json` selects the JSON parser.
nlohmann::json parse_config_text(const std::string& text, bool json);

/// Validates the document and fills defaults. Unknown keys are rejected.
ExperimentConfig parse_config(nlohmann::json doc, std::optional<std::uint64_t> seed_override = std::nullopt);

ExperimentConfig load_config(const std::filesystem::path& path,
                             std::optional<std::uint64_t> seed_override = std::nullopt);

std::string sha256_hex(const std::string& data);

}  // namespace ltlab::cli
