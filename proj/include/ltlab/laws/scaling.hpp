#pragma once

#include <vector>

#include "ltlab/core/report.hpp"
#include "ltlab/laws/moments.hpp"

namespace ltlab::laws {

/// r^{1−αd} (log log 1/r)^{α(d+θ)}; requires r < 1/e.
double limsup_normalizer(double r, double alpha, int d, double theta);
/// r^{1−αd} (log 1/r)^{α(d+θ)}, the uniform-in-s variant.
double limsup_normalizer_uniform(double r, double alpha, int d, double theta);
/// r^{αd} (log log 1/r)^{−α(d+θ)}.
double chung_normalizer(double r, double alpha, int d, double theta);

/// sup_x L̂(x, [s−r, s+r]) for each radius. Throws std::domain_error when the
/// path is constant on the largest window (no occupation density).
std::vector<double> sup_localtime_levels(const SamplePath& path, double s, const std::vector<double>& radii,
                                         double eps);

/// sup_{|t−s| ≤ r} ‖X_t − X_s‖ over grid points, for each radius.
std::vector<double> oscillation_levels(const SamplePath& path, double s, const std::vector<double>& radii);

struct LimsupResult {
  ScalingReport fixed;    // log log normalizer, carries the verdict
  ScalingReport uniform;  // log normalizer, reported without a verdict
  double bin_width = 0.0;
};

/// Radii r = 2^{−n} for n in n_levels. Radii below 8 grid steps are refused;
/// radii ≥ 1/e are dropped (flagged). Fits mean log sup_x L̂ against log r;
/// pass when the slope is within 0.1 of 1 − αd and the mean normalized ratios
/// show no increasing trend as r shrinks (Mann-Kendall, level 1e-3).
LimsupResult limsup_ratio_scan(const ProcessSpec& spec, const TimeGrid& grid, double s,
                               const std::vector<int>& n_levels, std::size_t replicas, const RngStream& rng,
                               const EstimatorSettings& est = {},
                               kernels::Execution exec = kernels::Execution::parallel);

/// Oscillation sup_{|t−s| ≤ r} ‖X_t − X_s‖ at each centre of s_grid. Per replica
/// and level the minimum normalized ratio over centres is kept. Pass when the
/// slope of the mean log oscillation against log r is within 0.1 of αd and the
/// smallest normalized ratio over all levels is strictly positive.
ScalingReport chung_ratio_scan(const ProcessSpec& spec, const TimeGrid& grid, const std::vector<double>& s_grid,
                               const std::vector<int>& n_levels, std::size_t replicas, const RngStream& rng,
                               kernels::Execution exec = kernels::Execution::parallel);

}  // namespace ltlab::laws
