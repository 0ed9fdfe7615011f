#pragma once

#include <string>
#include <vector>

#include "ltlab/core/stats.hpp"
#include "ltlab/laws/moments.hpp"

namespace ltlab::laws {

struct TailLevel {
  double u = 0.0;
  double threshold = 0.0;  // |I|^{1−αd} u^{α(d+θ)}
  std::size_t exceedances = 0;
  double probability = 0.0;
  double log_probability = 0.0;
  double se_log = 0.0;  // delta-method standard error of log P
  bool in_fit = false;
};

struct TailReport {
  std::string statement = "local-time-exponential-tail";
  double a = 0.0, b = 1.0;
  std::string mode;
  std::vector<double> x;
  double exponent = 0.0;  // α(d+θ)
  double scale = 0.0;     // |I|^{1−αd}
  double bin_width = 0.0;
  std::size_t replicas = 0;
  std::vector<TailLevel> levels;
  std::size_t truncated = 0;  // requested levels dropped for having < 20 exceedances
  LinearFit fit;              // log P against u over the fit levels
  double rate = 0.0;          // ĉ = −slope
  double rate_ci_low = 0.0, rate_ci_high = 0.0;
  bool decreasing = false;
  bool convex = false;
  bool pass = false;
  std::vector<std::string> flags;
};

inline constexpr std::size_t kMinExceedances = 20;

/// Exceedance probabilities P(L(x, I) ≥ |I|^{1−αd} u^{α(d+θ)}) over replicas,
/// I = [a, b]. With an empty u_grid, 16 equally spaced levels up to the last
/// level with at least 20 exceedances are used. The decay rate is fitted by
/// least squares of log P on u over levels with u ≥ u_fit_min (all positive
/// levels when fewer than three qualify). Pass: P decreasing, second
/// differences of log P ≥ −3 SE, ĉ > 0 with the 95% interval excluding 0.
TailReport tail_probe(const ProcessSpec& spec, const TimeGrid& grid, double a, double b, LocationMode mode,
                      const std::vector<double>& x, std::vector<double> u_grid, std::size_t replicas,
                      const RngStream& rng, double u_fit_min = 1.0, const EstimatorSettings& est = {},
                      kernels::Execution exec = kernels::Execution::parallel);

/// Same analysis on precomputed local-time samples.
TailReport analyze_tail(std::vector<double> samples, double exponent, double scale, std::vector<double> u_grid,
                        double u_fit_min);

}  // namespace ltlab::laws
