#pragma once

#include <span>
#include <vector>

#include "ltlab/core/process.hpp"
#include "ltlab/core/report.hpp"

namespace ltlab::localtime {

/// ω(h) = max over grid points with |t − s| ≤ h of ‖X_t − X_s‖ (Euclidean).
/// h must be a positive integer multiple of the grid step.
double max_oscillation(const SamplePath& path, double h);

/// ω(h) for each h, normalizer h^α (log 1/h)^ι, and two log-log fits:
/// `fit` regresses log ω on log h, `normalized_fit` regresses
/// log(ω / (log 1/h)^ι) on log h, removing the logarithmic factor.
/// With several paths the per-level mean of log ω is fitted and the ratios are
/// summarized across paths. trend_p_value is the one-sided Mann-Kendall
/// p-value for ratios increasing as h shrinks.
ScalingReport modulus_of_continuity(std::span<const SamplePath> paths, const std::vector<double>& h_values,
                                    double alpha, double iota);
ScalingReport modulus_of_continuity(const SamplePath& path, const std::vector<double>& h_values, double alpha,
                                    double iota);

}  // namespace ltlab::localtime
