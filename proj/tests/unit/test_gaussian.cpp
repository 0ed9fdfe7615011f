#include <gtest/gtest.h>

#include <cmath>

#include "ltlab/gaussian/charfn.hpp"
#include "ltlab/gaussian/covariance.hpp"
#include "ltlab/gaussian/lnd.hpp"
#include "ltlab/gaussian/sampler.hpp"

using namespace ltlab;
using namespace ltlab::gaussian;

TEST(Covariance, BrownianCaseIsMinimum) {
  for (double s : {0.1, 0.4, 0.9})
    for (double t : {0.2, 0.5, 1.3}) EXPECT_NEAR(fbm_covariance(s, t, 0.5), std::min(s, t), 1e-15);
}

TEST(Covariance, IncrementVarianceIsPowerLaw) {
  const auto c = CovarianceSpec::fbm(0.3);
  EXPECT_NEAR(c.increment_variance(0.2, 0.7), std::pow(0.5, 0.6), 1e-14);
}

TEST(Covariance, IncrementCovarianceMatchesDifferencedMatrix) {
  // Route 1: increment_covariance. Route 2: D R Dᵀ with the differencing matrix D.
  const std::vector<double> part{0.0, 0.1, 0.35, 0.4, 0.9};
  for (const auto& cov : {CovarianceSpec::fbm(0.3), CovarianceSpec::sub_fbm(0.7)}) {
    const Eigen::MatrixXd s = increment_covariance(cov, part);
    const Eigen::MatrixXd r = covariance_matrix(cov, part);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(4, 5);
    for (int k = 0; k < 4; ++k) {
      d(k, k) = -1.0;
      d(k, k + 1) = 1.0;
    }
    EXPECT_LT((s - d * r * d.transpose()).cwiseAbs().maxCoeff(), 1e-13) << cov.name;
  }
}

TEST(Covariance, SubFbmSandwich) {
  const auto c = CovarianceSpec::sub_fbm(0.3);
  const auto chk = check_variance_sandwich(c, TimeGrid(0.0, 1.0, 64));
  EXPECT_TRUE(chk.holds);
  EXPECT_GE(chk.min_ratio, c.c_minus * (1 - 1e-9));
  EXPECT_LE(chk.max_ratio, c.c_plus * (1 + 1e-9));
  EXPECT_THROW(CovarianceSpec::from_catalog("nope", 0.5), std::invalid_argument);
}

TEST(Sampler, CholeskyImpliedCovarianceExact) {
  const TimeGrid g(0.0, 1.0, 32);
  for (double h : {0.3, 0.5, 0.7}) {
    const GaussianSampler s(CovarianceSpec::fbm(h), g, SamplingMethod::cholesky);
    const auto pts = g.points();
    EXPECT_LT((s.implied_covariance() - covariance_matrix(CovarianceSpec::fbm(h), pts)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Sampler, CirculantImpliedCovarianceExact) {
  const TimeGrid g(0.0, 2.0, 1024);
  for (double h : {0.2, 0.5, 0.8}) {
    const GaussianSampler s(CovarianceSpec::fbm(h), g);
    ASSERT_EQ(s.method(), SamplingMethod::circulant_embedding);
    const auto pts = g.points();
    EXPECT_LT((s.implied_covariance() - covariance_matrix(CovarianceSpec::fbm(h), pts)).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_EQ(s.clipped_mass(), 0.0);
  }
}

TEST(Sampler, AutomaticFallsBackForShiftedGrid) {
  const GaussianSampler s(CovarianceSpec::fbm(0.3), TimeGrid(0.5, 1.5, 600));
  EXPECT_EQ(s.method(), SamplingMethod::cholesky);
  EXPECT_THROW(GaussianSampler(CovarianceSpec::fbm(0.3), TimeGrid(0.5, 1.5, 600), SamplingMethod::circulant_embedding),
               std::invalid_argument);
}

TEST(Sampler, MonteCarloCovarianceBothMethods) {
  const TimeGrid g(0.0, 1.0, 8);
  for (auto m : {SamplingMethod::cholesky, SamplingMethod::circulant_embedding}) {
    const GaussianSampler s(CovarianceSpec::fbm(0.7), g, m);
    RngStream rng(12, {0, 0});
    const std::size_t n = 20000;
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(9, 9);
    std::vector<std::vector<double>> out(1);
    for (std::size_t r = 0; r < n; ++r) {
      s.sample_components(rng, out);
      Eigen::Map<const Eigen::VectorXd> v(out[0].data(), 9);
      acc += v * v.transpose();
    }
    acc /= static_cast<double>(n);
    const Eigen::MatrixXd truth = covariance_matrix(CovarianceSpec::fbm(0.7), g.points());
    for (int i = 1; i < 9; ++i)
      for (int j = 1; j < 9; ++j) {
        const double se = std::sqrt((truth(i, i) * truth(j, j) + truth(i, j) * truth(i, j)) / n);
        EXPECT_LT(std::abs(acc(i, j) - truth(i, j)), 5 * se);
      }
  }
}

TEST(Sampler, Deterministic) {
  const GaussianSampler s(CovarianceSpec::fbm(0.4), TimeGrid(0.0, 1.0, 2048));
  RngStream a(3, {1, 2}), b(3, {1, 2});
  const auto pa = s.sample(3, a, ProcessSpec{}), pb = s.sample(3, b, ProcessSpec{});
  EXPECT_TRUE(std::equal(pa.values().begin(), pa.values().end(), pb.values().begin()));
  EXPECT_EQ(pa.value(0, 2), 0.0);
}

TEST(Lnd, BrownianRatioIsOne) {
  RngStream rng(1, {0, 0});
  const auto rep = check_lnd(CovarianceSpec::fbm(0.5), 2, 6, 500, rng);
  EXPECT_NEAR(rep.min_ratio, 1.0, 1e-10);
  EXPECT_NEAR(rep.min_worst_direction, 1.0, 1e-10);
}

TEST(Lnd, SingleIncrementRatioIsOne) {
  const std::vector<double> part{0.2, 0.9}, xi{1.7};
  for (double h : {0.2, 0.5, 0.8}) EXPECT_NEAR(lnd_ratio(CovarianceSpec::fbm(h), 1, part, xi), 1.0, 1e-14);
}

TEST(Lnd, FbmBoundedAwayFromZero) {
  for (double h : {0.3, 0.7}) {
    RngStream rng(2, {0, 0});
    const auto rep = check_lnd(CovarianceSpec::fbm(h), 1, 6, 1000, rng);
    EXPECT_GT(rep.min_ratio, 0.05) << h;
    EXPECT_LT(rep.min_ratio, 1.0) << h;
    EXPECT_LE(rep.min_worst_direction, rep.min_random + 1e-12);
  }
}

TEST(Lnd, RatioPropertyOverRandomInputs) {
  // Var ≥ 0 always; for H < 1/2 increments are negatively correlated, so the
  // all-ones direction gives a ratio below 1, and for H > 1/2 above 1.
  RngStream rng(4, {0, 0});
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + static_cast<int>(rng.uniform() * 5);
    std::vector<double> part{0.0};
    for (int k = 0; k < m; ++k) part.push_back(part.back() + 0.05 + rng.uniform());
    std::vector<double> ones(static_cast<std::size_t>(m), 1.0);
    EXPECT_LT(lnd_ratio(CovarianceSpec::fbm(0.3), 1, part, ones), 1.0);
    EXPECT_GT(lnd_ratio(CovarianceSpec::fbm(0.7), 1, part, ones), 1.0);
  }
}

TEST(Charfn, SingleIncrementClosedForm) {
  const std::vector<double> part{0.3, 0.8}, xi{2.0, -1.0};
  const double var = std::pow(0.5, 2 * 0.3);
  EXPECT_NEAR(gaussian_charfn(CovarianceSpec::fbm(0.3), 2, part, xi), std::exp(-0.5 * 5.0 * var), 1e-14);
  const auto inc = gaussian_increment_charfn(CovarianceSpec::fbm(0.3), 2);
  EXPECT_NEAR(inc.value(0.3, 0.8, xi), std::exp(-0.5 * 5.0 * var), 1e-14);
}

TEST(Charfn, MultiIncrementMatchesCovarianceQuadraticForm) {
  const std::vector<double> part{0.0, 0.2, 0.5, 1.0}, xi{1.0, -2.0, 0.5};
  const auto cov = CovarianceSpec::fbm(0.6);
  // Σ ξ_k (Z_{t_k} − Z_{t_{k−1}}) = Σ_j w_j Z_{t_j} with w_j = ξ_j − ξ_{j+1}.
  const std::vector<double> t{0.2, 0.5, 1.0};
  const Eigen::Vector3d w(xi[0] - xi[1], xi[1] - xi[2], xi[2]);
  const double var = w.dot(covariance_matrix(cov, t) * w);
  EXPECT_NEAR(gaussian_charfn(cov, 1, part, xi), std::exp(-0.5 * var), 1e-14);
  EXPECT_THROW(gaussian_charfn(cov, 1, std::vector<double>{0.0, 0.5, 0.5, 1.0}, xi), std::invalid_argument);
}

TEST(Charfn, DecayBoundHolds) {
  const std::vector<double> xi{0.5, 1, 2, 4, 8, 16, 32}, deltas{0.01, 0.1, 0.5, 1.0};
  const std::vector<int> ks{1, 2, 3, 4, 6};
  for (double h : {0.3, 0.5, 0.7}) {
    const auto chk = check_gaussian_decay(CovarianceSpec::fbm(h), xi, deltas, ks);
    EXPECT_TRUE(chk.holds) << h;
    EXPECT_LE(chk.max_excess, 1.0);
  }
}
