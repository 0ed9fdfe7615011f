#include "ltlab/gaussian/charfn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ltlab::gaussian {

double gaussian_charfn(const CovarianceSpec& cov, int d, std::span<const double> partition,
                       std::span<const double> xi) {
  if (d < 1) throw std::invalid_argument("gaussian_charfn: d must be >= 1");
  if (partition.size() < 2) throw std::invalid_argument("gaussian_charfn: partition needs t_0 and t_1");
  for (std::size_t k = 1; k < partition.size(); ++k)
    if (!(partition[k] > partition[k - 1]))
      throw std::invalid_argument("gaussian_charfn: partition must be strictly increasing");
  if (partition.front() < 0.0) throw std::invalid_argument("gaussian_charfn: partition must lie in [0,T]");
  const std::size_t m = partition.size() - 1;
  if (xi.size() != m * static_cast<std::size_t>(d)) throw std::invalid_argument("gaussian_charfn: xi must hold m*d entries");
  const Eigen::MatrixXd s = increment_covariance(cov, partition);
  double var = 0.0;
  Eigen::VectorXd v(static_cast<Eigen::Index>(m));
  for (int l = 0; l < d; ++l) {
    for (std::size_t k = 0; k < m; ++k) v(static_cast<Eigen::Index>(k)) = xi[k * d + l];
    var += v.dot(s * v);
  }
  return std::exp(-0.5 * std::max(0.0, var));
}

double gaussian_decay_constant(const CovarianceSpec& cov, std::span<const int> ks) {
  double c = 1.0;
  for (int k : ks) {
    if (k <= 0) continue;
    const double p = 0.5 * k;
    c = std::max(c, std::pow(k / std::exp(1.0), p) * std::pow(cov.c_minus, -p));
  }
  return c;
}

DecayCheck check_gaussian_decay(const CovarianceSpec& cov, std::span<const double> xi_values,
                                std::span<const double> deltas, std::span<const int> ks, double s0) {
  DecayCheck out;
  out.ks.assign(ks.begin(), ks.end());
  out.constant = gaussian_decay_constant(cov, ks);
  for (double x : xi_values)
    for (double delta : deltas) {
      const double part[2] = {s0, s0 + delta};
      const double value = gaussian_charfn(cov, 1, part, std::span<const double>(&x, 1));
      for (int k : ks) {
        const double bound = out.constant * std::pow(std::abs(x), -k) * std::pow(delta, -cov.hurst * k);
        out.max_excess = std::max(out.max_excess, value / bound);
        ++out.points;
      }
    }
  out.holds = out.max_excess <= 1.0 + 1e-12;
  return out;
}

IncrementCharfn gaussian_increment_charfn(const CovarianceSpec& cov, int d) {
  IncrementCharfn f;
  f.d = d;
  f.value = [cov](double s, double t, std::span<const double> xi) {
    double norm2 = 0.0;
    for (double x : xi) norm2 += x * x;
    return std::exp(-0.5 * norm2 * cov.increment_variance(s, t));
  };
  return f;
}

}  // namespace ltlab::gaussian
