#include "ltlab/gaussian/lnd.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ltlab/gaussian/sampler.hpp"

namespace ltlab::gaussian {
namespace {

double ratio_from_matrix(const Eigen::MatrixXd& s, int d, std::span<const double> xi) {
  const auto m = s.rows();
  double num = 0.0, den = 0.0;
  Eigen::VectorXd v(m);
  for (int l = 0; l < d; ++l) {
    for (Eigen::Index k = 0; k < m; ++k) v(k) = xi[static_cast<std::size_t>(k * d + l)];
    num += v.dot(s * v);
    for (Eigen::Index k = 0; k < m; ++k) den += v(k) * v(k) * s(k, k);
  }
  if (!(den > 0.0)) throw std::invalid_argument("lnd: xi must not vanish");
  return num / den;
}

void require_psd(const Eigen::MatrixXd& s) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(s);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
    throw NotPsdError("lnd: increment covariance is not positive semidefinite");
}

// Smallest μ with S v = μ diag(S) v, attained by v = D^{-1/2} w.
double worst_direction(const Eigen::MatrixXd& s, std::vector<double>& v_out) {
  const Eigen::VectorXd dinv = s.diagonal().cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd n = dinv.asDiagonal() * s * dinv.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(n);
  const Eigen::VectorXd v = dinv.asDiagonal() * es.eigenvectors().col(0);
  v_out.assign(v.data(), v.data() + v.size());
  return std::max(0.0, es.eigenvalues()(0));
}

}  // namespace

double lnd_ratio(const CovarianceSpec& cov, int d, std::span<const double> partition, std::span<const double> xi) {
  if (d < 1) throw std::invalid_argument("lnd: d must be >= 1");
  for (std::size_t k = 1; k < partition.size(); ++k)
    if (!(partition[k] > partition[k - 1])) throw std::invalid_argument("lnd: partition must be increasing");
  const std::size_t m = partition.size() - 1;
  if (xi.size() != m * static_cast<std::size_t>(d)) throw std::invalid_argument("lnd: xi must hold m*d entries");
  return ratio_from_matrix(increment_covariance(cov, partition), d, xi);
}

LndReport check_lnd(const CovarianceSpec& cov, int d, int m_max, std::size_t trials, RngStream& rng,
                    double horizon) {
  if (m_max < 1) throw std::invalid_argument("check_lnd: m_max must be >= 1");
  if (trials < 1) throw std::invalid_argument("check_lnd: trials must be >= 1");
  if (d < 1) throw std::invalid_argument("check_lnd: d must be >= 1");
  LndReport rep;
  rep.d = d;
  rep.m_max = m_max;
  rep.trials = trials;
  rep.horizon = horizon;
  rep.min_ratio = rep.min_random = rep.min_adversarial = rep.min_worst_direction =
      std::numeric_limits<double>::infinity();

  auto consider = [&](const std::string& family, double ratio, const std::vector<double>& part,
                      const std::vector<double>& xi, double& bucket) {
    bucket = std::min(bucket, ratio);
    if (ratio < rep.min_ratio) {
      rep.min_ratio = ratio;
      rep.worst_case = {family, ratio, part, xi};
    }
  };
  auto probe_directions = [&](const std::vector<double>& part, const Eigen::MatrixXd& s) {
    std::vector<double> v;
    const double mu = worst_direction(s, v);
    std::vector<double> xi(v.size() * static_cast<std::size_t>(d), 0.0);
    for (std::size_t k = 0; k < v.size(); ++k) xi[k * d] = v[k];
    consider("worst-direction", mu, part, xi, rep.min_worst_direction);
  };

  std::vector<double> part, xi;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const int m = 1 + static_cast<int>(rng.uniform() * m_max) % m_max;
    part.assign(1, 0.0);
    for (int k = 0; k < m; ++k) part.push_back(rng.uniform() * horizon);
    std::sort(part.begin() + 1, part.end());
    if (std::adjacent_find(part.begin(), part.end()) != part.end()) continue;
    xi.resize(static_cast<std::size_t>(m * d));
    do {
      for (double& x : xi) x = rng.normal();
    } while (std::all_of(xi.begin(), xi.end(), [](double x) { return x == 0.0; }));
    const Eigen::MatrixXd s = increment_covariance(cov, part);
    require_psd(s);
    consider("random", ratio_from_matrix(s, d, xi), part, xi, rep.min_random);
    probe_directions(part, s);
  }

  for (int m = 1; m <= m_max; ++m) {
    std::vector<std::vector<double>> parts;
    std::vector<double> equal(1, 0.0), geometric(1, 0.0);
    for (int k = 1; k <= m; ++k) {
      equal.push_back(horizon * k / m);
      geometric.push_back(horizon * std::ldexp(1.0, k - m));
    }
    parts.push_back(equal);
    parts.push_back(geometric);
    for (const auto& p : parts) {
      const Eigen::MatrixXd s = increment_covariance(cov, p);
      require_psd(s);
      std::vector<double> alt(static_cast<std::size_t>(m * d)), ones(static_cast<std::size_t>(m * d), 1.0);
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < d; ++l) alt[static_cast<std::size_t>(k * d + l)] = (k % 2 == 0) ? 1.0 : -1.0;
      const std::string tag = (&p == &parts[0]) ? "uniform" : "dyadic";
      consider(tag + "-alternating", ratio_from_matrix(s, d, alt), p, alt, rep.min_adversarial);
      consider(tag + "-ones", ratio_from_matrix(s, d, ones), p, ones, rep.min_adversarial);
      probe_directions(p, s);
    }
  }
  return rep;
}

}  // namespace ltlab::gaussian
