#pragma once

#include <string>
#include <vector>

#include "ltlab/core/process.hpp"
#include "ltlab/core/rng.hpp"
#include "ltlab/core/stats.hpp"
#include "ltlab/kernels/parallel.hpp"

namespace ltlab::laws {

/// Histogram bin width used by the Monte Carlo scans. An explicit
/// `bin_width > 0` wins; otherwise ε = factor·Δ^α, reduced when
/// `resolution_clamp` is set so that ε ≤ 0.1·s^α at the smallest scale s of
/// the scan.
struct EstimatorSettings {
  double bin_factor = 2.0;
  double bin_width = 0.0;
  bool resolution_clamp = true;
};

double resolve_bin_width(const EstimatorSettings& s, const TimeGrid& grid, double alpha, double smallest_scale);

enum class LocationMode { fixed, shifted };
std::string to_string(LocationMode m);
LocationMode location_mode_from_string(const std::string& s);

struct MomentEstimate {
  int n = 1;
  double scale = 0.0;  // lag (moment scan) or ‖y‖ (Hölder scan)
  double mean = 0.0;
  double std_error = 0.0;
  bool resolution_flag = false;
};

struct MomentReport {
  std::string statement;
  std::string mode;
  std::vector<double> x;
  std::vector<int> n_list;
  std::vector<double> scales;
  std::vector<MomentEstimate> estimates;  // n-major, scale-minor
  std::vector<LinearFit> fits;             // one per n
  std::vector<double> target_slopes;
  std::vector<bool> pass_per_n;
  double tolerance = 0.1;  // per unit of n
  double bin_width = 0.0;
  std::size_t replicas = 0;
  std::size_t failures = 0;
  bool pass = false;
  std::vector<std::string> flags;

  const MomentEstimate& estimate(int n, std::size_t scale_index) const;
};

/// E|L(x, [a, a+lag])|^n for each n and lag, L estimated by the histogram cell of
/// width ε centred at x (or at x + X_a in shifted mode), with a = `start`.
/// Fits log E against log lag per n; pass when |slope − (1−αd)n| ≤ 0.1n for
/// every n. Lags with ε > 0.1·lag^α are flagged.
MomentReport moment_scan(const ProcessSpec& spec, const TimeGrid& grid, const std::vector<double>& x,
                         const std::vector<int>& n_list, const std::vector<double>& lags, std::size_t replicas,
                         const RngStream& rng, LocationMode mode = LocationMode::fixed, double start = 0.0,
                         const EstimatorSettings& est = {}, kernels::Execution exec = kernels::Execution::parallel);

/// E|L(x + y e_1, window) − L(x, window)| against ‖y‖; pass when the fitted
/// slope is at least γ − 0.1. Offsets below 2ε are flagged and left out of the fit.
MomentReport holder_increment_scan(const ProcessSpec& spec, const TimeGrid& grid, const std::vector<double>& x,
                                   const std::vector<double>& y_list, double gamma, double window_s,
                                   double window_t, std::size_t replicas, const RngStream& rng,
                                   const EstimatorSettings& est = {},
                                   kernels::Execution exec = kernels::Execution::parallel);

}  // namespace ltlab::laws
