#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "ltlab/core/stats.hpp"
#include "ltlab/gaussian/covariance.hpp"
#include "ltlab/rosenblatt/charfn.hpp"
#include "ltlab/rosenblatt/kernel.hpp"
#include "ltlab/rosenblatt/sampler.hpp"

using namespace ltlab;
using namespace ltlab::rosenblatt;

namespace {
const ChaosKernel& small_kernel() {
  static const ChaosKernel k = ChaosKernel::build(0.7, TimeGrid(0.0, 1.0, 64), 128);
  return k;
}
double min_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}
}  // namespace

TEST(ChaosKernel, RejectsBadParameters) {
  const TimeGrid g(0.0, 1.0, 8);
  EXPECT_THROW(ChaosKernel::build(0.5, g), std::invalid_argument);
  EXPECT_THROW(ChaosKernel::build(1.0, g), std::invalid_argument);
  EXPECT_THROW(ChaosKernel::build(0.7, g, 8), std::invalid_argument);
}

TEST(ChaosKernel, ZeroAtTimeZeroAndNormalized) {
  const auto& k = small_kernel();
  EXPECT_EQ(k.matrix_at(0.0).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_NEAR(k.variance(1.0), 1.0, 1e-12);
}

TEST(ChaosKernel, SymmetricPsdAndMonotone) {
  const auto& k = small_kernel();
  Eigen::MatrixXd prev = Eigen::MatrixXd::Zero(128, 128);
  for (std::size_t i : {8u, 16u, 32u, 48u, 64u}) {
    const Eigen::MatrixXd a = k.matrix_at_index(i);
    EXPECT_LT((a - a.transpose()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_GT(min_eigenvalue(a), -1e-12);
    EXPECT_GT(min_eigenvalue(a - prev), -1e-12);
    prev = a;
  }
}

TEST(ChaosKernel, OffGridMatrixMatchesGridMatrix) {
  // A grid time recomputed through the off-grid route must agree with the stored factor.
  const ChaosKernel k = ChaosKernel::build(0.7, TimeGrid(0.0, 1.0, 4), 32, 8);
  const Eigen::MatrixXd grid = k.matrix_at_index(2);
  const Eigen::MatrixXd off = k.matrix_at(0.5 + 1e-13);
  EXPECT_LT((grid - off).norm() / grid.norm(), 1e-6);
}

TEST(ChaosKernel, CovarianceApproachesFbmWithRank) {
  // Discretization error shrinks as the rank grows; at t ≥ 1/2 rank 256 is inside 3%.
  const TimeGrid g(0.0, 1.0, 8);
  const ChaosKernel lo = ChaosKernel::build(0.7, g, 64), hi = ChaosKernel::build(0.7, g, 256);
  for (double s : {0.5, 0.75, 1.0}) {
    const double truth = gaussian::fbm_covariance(s, 1.0, 0.7);
    const double e_lo = std::abs(lo.covariance(s, 1.0) / truth - 1.0);
    const double e_hi = std::abs(hi.covariance(s, 1.0) / truth - 1.0);
    EXPECT_LE(e_hi, e_lo + 1e-12) << s;
    EXPECT_LT(e_hi, 0.03) << s;
  }
}

TEST(ChaosKernel, SelfSimilarVarianceScaling) {
  const auto& k = small_kernel();
  // Var(Z_t) ≈ t^{2H} away from the finest scales.
  for (double t : {0.5, 0.75}) EXPECT_NEAR(k.variance(t) / std::pow(t, 1.4), 1.0, 0.04);
}

TEST(ChaosKernel, EigenvalueDecayNearMinusH) {
  const ChaosKernel k = ChaosKernel::build(0.7, TimeGrid(0.0, 1.0, 16), 256);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k.matrix_at(1.0), Eigen::EigenvaluesOnly);
  std::vector<double> lam(es.eigenvalues().data(), es.eigenvalues().data() + 256);
  std::sort(lam.begin(), lam.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });
  std::vector<double> lx, ly;
  for (std::size_t i = 4; i <= 32; ++i) {
    lx.push_back(std::log(static_cast<double>(i)));
    ly.push_back(std::log(std::abs(lam[i - 1])));
  }
  EXPECT_NEAR(linear_fit(lx, ly).slope, -0.7, 0.15);
}

TEST(ChaosKernel, ZeroKernelGivesZeroPath) {
  const ChaosKernel z = ChaosKernel::zero(0.7, TimeGrid(0.0, 1.0, 16), 32);
  RngStream rng(1, {0, 0});
  const SamplePath p = sample_rosenblatt(z, rng);
  for (double v : p.values()) EXPECT_EQ(v, 0.0);
  const std::vector<double> part{0.0, 1.0}, xi{3.0};
  EXPECT_EQ(rosenblatt_charfn_bound(z, part, xi).value, 1.0);
}

TEST(Sampler, PathEndpointMatchesQuadraticFormLaw) {
  // Route 1: feature prefix sums along the path. Route 2: ξᵀA(1)ξ − tr A(1) directly.
  const auto& k = small_kernel();
  std::vector<double> via_path(4000);
  for (std::size_t r = 0; r < via_path.size(); ++r) {
    RngStream s(2, {0, static_cast<std::uint32_t>(r)});
    via_path[r] = sample_rosenblatt(k, s).value(64);
  }
  const auto direct = sample_terminal(k, RngStream(3, {0, 0}), 4000);
  EXPECT_GT(ks_two_sample(via_path, direct).p_value, 1e-3);
}

TEST(Sampler, PathStartsAtZeroAndIsDeterministic) {
  const auto& k = small_kernel();
  RngStream a(5, {0, 0}), b(5, {0, 0});
  const SamplePath pa = sample_rosenblatt(k, a), pb = sample_rosenblatt(k, b);
  EXPECT_EQ(pa.value(0), 0.0);
  EXPECT_TRUE(std::equal(pa.values().begin(), pa.values().end(), pb.values().begin()));
}

TEST(Sampler, MomentsMatchTraceIdentities) {
  // E Z = 0, Var Z = 2 tr A², third cumulant 8 tr A³ > 0.
  const auto& k = small_kernel();
  const Eigen::MatrixXd a = k.matrix_at(1.0);
  const double var = 2.0 * (a * a).trace(), k3 = 8.0 * (a * a * a).trace();
  const auto z = sample_terminal(k, RngStream(6, {0, 0}), 100000);
  const auto s = summarize(z);
  EXPECT_LT(std::abs(s.mean), 4 * s.std_error);
  double m2 = 0, m3 = 0;
  for (double v : z) {
    m2 += (v - s.mean) * (v - s.mean);
    m3 += std::pow(v - s.mean, 3);
  }
  m2 /= z.size();
  m3 /= z.size();
  EXPECT_NEAR(m2, var, 0.03 * var);
  EXPECT_NEAR(m3, k3, 0.15 * k3);
  const auto sk = skewness(z);
  EXPECT_GT(sk.value, 5 * sk.std_error);
}

TEST(Charfn, EigenProductMatchesDefinition) {
  const std::vector<double> l{0.3, -0.2, 0.05};
  double direct = 1.0;
  for (double x : l) direct *= std::pow(1.0 + 4.0 * x * x, -0.25);
  EXPECT_NEAR(eigen_product_value(l), direct, 1e-15);
  EXPECT_EQ(eigen_product_value(std::vector<double>{0.0, 0.0}), 1.0);
}

TEST(Charfn, ZeroFrequencyAndRange) {
  const auto& k = small_kernel();
  const std::vector<double> part{0.0, 0.5, 1.0};
  EXPECT_EQ(rosenblatt_charfn_bound(k, part, std::vector<double>{0.0, 0.0}).value, 1.0);
  const auto ep = rosenblatt_charfn_bound(k, part, std::vector<double>{1.0, -2.0});
  EXPECT_GT(ep.value, 0.0);
  EXPECT_LT(ep.value, 1.0);
  for (std::size_t i = 1; i < ep.lambdas.size(); ++i) EXPECT_GE(std::abs(ep.lambdas[i - 1]), std::abs(ep.lambdas[i]));
  EXPECT_THROW(rosenblatt_charfn_bound(k, std::vector<double>{0.5}, std::vector<double>{}), std::invalid_argument);
}

TEST(Charfn, EmpiricalAgreesWithEigenProduct) {
  const auto& k = small_kernel();
  const auto z = sample_terminal(k, RngStream(7, {0, 0}), 50000);
  const std::vector<double> freqs{0.25, 0.5, 1.0, 2.0, 3.0};
  for (const auto& c : compare_empirical_charfn(k.matrix_at(1.0), z, freqs)) EXPECT_LT(std::abs(c.z_score), 4.0) << c.xi;
}

TEST(Charfn, IncrementProviderUsesSelfSimilarity) {
  const auto& k = small_kernel();
  const auto inc = rosenblatt_increment_charfn(k);
  const std::vector<double> xi{1.5};
  const std::vector<double> full{0.0, 1.0};
  EXPECT_NEAR(inc.value(0.0, 1.0, xi), rosenblatt_charfn_bound(k, full, xi).value, 1e-12);
  // Shifting the window leaves the value unchanged.
  EXPECT_DOUBLE_EQ(inc.value(0.1, 0.6, xi), inc.value(0.4, 0.9, xi));
}

TEST(Charfn, DecayBoundHolds) {
  const auto& k = small_kernel();
  const std::vector<double> xi{0.5, 2, 8, 32}, deltas{0.25, 0.5, 1.0};
  const std::vector<int> ks{1, 2, 4};
  EXPECT_TRUE(check_rosenblatt_decay(k, xi, deltas, ks).holds);
}
