#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ltlab {

/// Sample mean, standard deviation and standard error of the mean.
struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double std_error = 0.0;
};

SampleSummary summarize(std::span<const double> xs);

double quantile(std::vector<double> xs, double q);

/// Skewness estimate and its standard error under a normal reference.
struct SkewnessEstimate {
  double value = 0.0;
  double std_error = 0.0;
};
SkewnessEstimate skewness(std::span<const double> xs);

/// Ordinary least squares y = intercept + slope * x.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double ci_low = 0.0;   // 95% two-sided, Student t with n-2 dof
  double ci_high = 0.0;
  std::size_t n = 0;
};

LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

/// Mann-Kendall trend test.
struct TrendTest {
  double s = 0.0;           // Kendall S statistic
  double z = 0.0;           // normal score with continuity correction
  double p_increasing = 1.0;  // one-sided p-value against an increasing trend
  double p_two_sided = 1.0;
};

/// Exact null distribution for n <= 8, normal approximation beyond.
TrendTest mann_kendall(std::span<const double> xs);

/// Two-sample Kolmogorov-Smirnov test (asymptotic p-value).
struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

double pearson_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace ltlab
