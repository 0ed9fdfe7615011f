#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <string>

#include "ltlab/core/grid.hpp"

namespace ltlab::gaussian {

/// R(s, t) = ½ (s^{2H} + t^{2H} − |t − s|^{2H}).
double fbm_covariance(double s, double t, double hurst);

enum class CovarianceKind { fbm, custom };

/// Covariance of one component of a centered Gaussian process. Components of a
/// d-dimensional process are independent copies.
///
/// `c_minus` and `c_plus` bound the increment variance relative to |t−s|^{2H}.
struct CovarianceSpec {
  CovarianceKind kind = CovarianceKind::fbm;
  std::string name = "fbm";
  double hurst = 0.5;
  double c_minus = 1.0;
  double c_plus = 1.0;
  std::function<double(double, double)> r;  // custom kind only

  double operator()(double s, double t) const;
  /// E(Z_t − Z_s)².
  double increment_variance(double s, double t) const;

  static CovarianceSpec fbm(double hurst);
  static CovarianceSpec custom(std::string name, std::function<double(double, double)> r, double hurst,
                               double c_minus, double c_plus);
  /// Sub-fractional Brownian motion, a quasi-helix with non-stationary increments.
  static CovarianceSpec sub_fbm(double hurst);
  /// Catalog lookup: "fbm", "sub-fbm".
  static CovarianceSpec from_catalog(const std::string& name, double hurst);
};

/// Covariance matrix of the process at the given times.
Eigen::MatrixXd covariance_matrix(const CovarianceSpec& cov, std::span<const double> times);

/// Covariance of the increments Z_{t_k} − Z_{t_{k−1}}, k = 1..m, for a partition
/// t_0 < t_1 < … < t_m.
Eigen::MatrixXd increment_covariance(const CovarianceSpec& cov, std::span<const double> partition);

/// Extremes of E(Z_t − Z_s)² / |t − s|^{2H} over all pairs of grid points.
struct SandwichCheck {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  bool holds = false;  // c_minus ≤ min and max ≤ c_plus, up to 1e-9 relative
};
SandwichCheck check_variance_sandwich(const CovarianceSpec& cov, const TimeGrid& grid);

}  // namespace ltlab::gaussian
