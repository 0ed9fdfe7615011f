#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ltlab/core/stats.hpp"

namespace ltlab {

/// Per-level statistics of a scaling experiment (one radius, lag or grid size).
struct LevelStat {
  double scale = 0.0;         // radius r, lag h, or grid step
  double mean = 0.0;          // mean of the raw statistic
  double std_error = 0.0;
  double mean_log = 0.0;      // mean of log(statistic); regression target
  double normalizer = 0.0;    // g(scale); 0 when not applicable
  double ratio_mean = 0.0;    // statistic / normalizer summaries
  double ratio_median = 0.0;
  double ratio_q90 = 0.0;
  double ratio_max = 0.0;
  double ratio_min = 0.0;
  std::size_t samples = 0;
};

/// Record of a scaling-law experiment: levels, fitted log-log slope, the
/// exponent it is compared against, and trend diagnostics on normalized ratios.
struct ScalingReport {
  std::string statement;  // identifier of the law under test, e.g. "limsup-fixed-center"
  std::string quantity;   // what was measured
  std::vector<LevelStat> levels;
  LinearFit fit;          // mean_log against log(scale)
  LinearFit normalized_fit;  // log(ratio) against log(scale), when a normalizer exists
  double target_slope = 0.0;
  double tolerance = 0.0;
  double trend_p_value = 1.0;  // Mann-Kendall, ratios increasing as scale shrinks
  double ratio_floor = 0.0;    // min normalized ratio over all levels
  double replica_ratio_max = 0.0;
  bool pass = false;
  std::size_t failures = 0;    // aborted replicas (e.g. SDE blow-ups)
  std::vector<std::string> flags;
};

}  // namespace ltlab
