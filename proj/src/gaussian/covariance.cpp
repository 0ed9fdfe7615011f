#include "ltlab/gaussian/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ltlab::gaussian {

double fbm_covariance(double s, double t, double hurst) {
  if (!(hurst > 0.0 && hurst < 1.0)) throw std::invalid_argument("fbm_covariance: H must lie in (0,1)");
  if (s < 0.0 || t < 0.0) throw std::invalid_argument("fbm_covariance: times must be non-negative");
  const double h2 = 2.0 * hurst;
  return 0.5 * (std::pow(s, h2) + std::pow(t, h2) - std::pow(std::abs(t - s), h2));
}

double CovarianceSpec::operator()(double s, double t) const {
  if (kind == CovarianceKind::fbm) return fbm_covariance(s, t, hurst);
  return r(s, t);
}

double CovarianceSpec::increment_variance(double s, double t) const {
  if (kind == CovarianceKind::fbm) return std::pow(std::abs(t - s), 2.0 * hurst);
  return r(t, t) + r(s, s) - 2.0 * r(s, t);
}

CovarianceSpec CovarianceSpec::fbm(double hurst) {
  if (!(hurst > 0.0 && hurst < 1.0)) throw std::invalid_argument("fbm covariance: H must lie in (0,1)");
  CovarianceSpec c;
  c.kind = CovarianceKind::fbm;
  c.name = "fbm";
  c.hurst = hurst;
  return c;
}

CovarianceSpec CovarianceSpec::custom(std::string name, std::function<double(double, double)> r,
                                      double hurst, double c_minus, double c_plus) {
  if (!r) throw std::invalid_argument("custom covariance: callable required");
  if (!(c_minus > 0.0 && c_minus <= c_plus))
    throw std::invalid_argument("custom covariance: need 0 < c_minus <= c_plus");
  CovarianceSpec c;
  c.kind = CovarianceKind::custom;
  c.name = std::move(name);
  c.hurst = hurst;
  c.c_minus = c_minus;
  c.c_plus = c_plus;
  c.r = std::move(r);
  return c;
}

CovarianceSpec CovarianceSpec::sub_fbm(double hurst) {
  const double h2 = 2.0 * hurst;
  auto r = [h2](double s, double t) {
    return std::pow(s, h2) + std::pow(t, h2) - 0.5 * (std::pow(s + t, h2) + std::pow(std::abs(t - s), h2));
  };
  // Increment variance lies between min(1, 2 - 2^{2H-1}) and max(1, 2 - 2^{2H-1}) times |t-s|^{2H}.
  const double k = 2.0 - std::pow(2.0, h2 - 1.0);
  return custom("sub-fbm", r, hurst, std::min(1.0, k), std::max(1.0, k));
}

CovarianceSpec CovarianceSpec::from_catalog(const std::string& name, double hurst) {
  if (name == "fbm") return fbm(hurst);
  if (name == "sub-fbm") return sub_fbm(hurst);
  throw std::invalid_argument("unknown covariance '" + name + "' (known: fbm, sub-fbm)");
}

Eigen::MatrixXd covariance_matrix(const CovarianceSpec& cov, std::span<const double> times) {
  const auto n = static_cast<Eigen::Index>(times.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) m(i, j) = m(j, i) = cov(times[i], times[j]);
  return m;
}

Eigen::MatrixXd increment_covariance(const CovarianceSpec& cov, std::span<const double> partition) {
  if (partition.size() < 2) throw std::invalid_argument("increment_covariance: need at least two partition points");
  const auto m = static_cast<Eigen::Index>(partition.size() - 1);
  Eigen::MatrixXd s(m, m);
  const double h2 = 2.0 * cov.hurst;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double a = partition[i], b = partition[i + 1];
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double c = partition[j], d = partition[j + 1];
      double v;
      if (cov.kind == CovarianceKind::fbm) {
        // Differences of |.|^{2H} avoid cancellation in the large R(t,t) terms.
        v = 0.5 * (std::pow(std::abs(b - c), h2) + std::pow(std::abs(a - d), h2) -
                   std::pow(std::abs(b - d), h2) - std::pow(std::abs(a - c), h2));
      } else {
        v = cov(b, d) - cov(b, c) - cov(a, d) + cov(a, c);
      }
      s(i, j) = s(j, i) = v;
    }
  }
  return s;
}

SandwichCheck check_variance_sandwich(const CovarianceSpec& cov, const TimeGrid& grid) {
  SandwichCheck out;
  out.min_ratio = std::numeric_limits<double>::infinity();
  out.max_ratio = 0.0;
  const std::size_t stride = std::max<std::size_t>(1, grid.n_points() / 256);
  for (std::size_t i = 0; i < grid.n_points(); i += stride)
    for (std::size_t j = i + stride; j < grid.n_points(); j += stride) {
      const double s = grid.point(i), t = grid.point(j);
      const double ratio = cov.increment_variance(s, t) / std::pow(t - s, 2.0 * cov.hurst);
      out.min_ratio = std::min(out.min_ratio, ratio);
      out.max_ratio = std::max(out.max_ratio, ratio);
    }
  out.holds = out.min_ratio >= cov.c_minus * (1.0 - 1e-9) && out.max_ratio <= cov.c_plus * (1.0 + 1e-9);
  return out;
}

}  // namespace ltlab::gaussian
