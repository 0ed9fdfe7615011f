#include <gtest/gtest.h>

#include <boost/math/special_functions/binomial.hpp>
#include <cmath>

#include "ltlab/analytics/alpha_table.hpp"
#include "ltlab/analytics/integrals.hpp"

using namespace ltlab;
using namespace ltlab::analytics;

namespace {
// Explicit alternating sum: h! α_h(k) = Σ_j (−1)^j C(h, j) (h − j)^k.
BigInt explicit_sum(std::size_t h, std::size_t k) {
  BigInt s = 0, fact = 1;
  for (std::size_t j = 0; j <= h; ++j) {
    BigInt term = boost::multiprecision::pow(BigInt(h - j), static_cast<unsigned>(k));
    BigInt binom = 1;
    for (std::size_t i = 0; i < j; ++i) binom = binom * (h - i) / (i + 1);
    term *= binom;
    s += (j % 2 == 0) ? term : BigInt(-term);
  }
  for (std::size_t i = 2; i <= h; ++i) fact *= i;
  return s / fact;
}
}  // namespace

TEST(AlphaTable, MatchesExplicitSum) {
  const AlphaTable t(40);
  for (std::size_t k = 1; k <= 40; ++k)
    for (std::size_t h = 1; h <= k; ++h) EXPECT_EQ(t.at(h, k), explicit_sum(h, k)) << h << "," << k;
}

TEST(AlphaTable, MatchesSetPartitionEnumeration) {
  const AlphaTable t(12);
  const auto counts = partition_counts_by_enumeration(12);
  for (std::size_t k = 1; k <= 12; ++k)
    for (std::size_t h = 1; h <= k; ++h) EXPECT_EQ(t.at(h, k), BigInt(counts[k][h]));
}

TEST(AlphaTable, BoundaryValuesAndRowSums) {
  const AlphaTable t(20);
  EXPECT_EQ(t.at(0, 5), 0);
  EXPECT_EQ(t.at(6, 5), 0);
  EXPECT_EQ(t.at(2, 10), 511);  // 2^{k−1} − 1
  EXPECT_EQ(t.at(9, 10), 45);   // C(k, 2)
  BigInt bell = 0;
  for (std::size_t h = 1; h <= 10; ++h) bell += t.at(h, 10);
  EXPECT_EQ(bell, 115975);
}

TEST(AlphaTable, BoundHoldsAndConstantIsBelowOne) {
  const AlphaTable t(60);
  EXPECT_TRUE(t.bound_holds(60));
  for (std::size_t k : {10u, 30u, 60u}) {
    EXPECT_GT(t.minimal_constant(k), 0.0);
    EXPECT_LE(t.minimal_constant(k), 1.0);
  }
}

TEST(AlphaTable, LogBigHandlesHugeValues) {
  const BigInt x = boost::multiprecision::pow(BigInt(10), 400);
  EXPECT_NEAR(log_big(x), 400 * std::log(10.0), 1e-9);
}

TEST(Sharpness, LowerBoundAndGrowth) {
  const auto rep = alpha_sharpness_probe({10, 20, 40, 80, 160}, 0.5);
  EXPECT_TRUE(rep.all_hold);
  EXPECT_TRUE(rep.increasing);
  EXPECT_EQ(rep.rows[0].j, 5u);
}

TEST(BetaIdentity, AgreesAcrossExponents) {
  for (double a : {-0.9, -0.5, 0.0, 0.3, 2.5})
    for (double b : {-0.7, 0.0, 0.6, 1.5}) {
      const auto r = beta_identity_check(a, b, 1.7);
      EXPECT_LT(r.relative_difference, 1e-10) << a << "," << b;
    }
  EXPECT_THROW(beta_identity_check(-1.0, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(beta_identity_check(0.0, 0.0, 0.0), std::invalid_argument);
}

TEST(BetaIdentity, PolynomialCase) {
  // ∫_0^t (t−s) s ds = t³/6.
  EXPECT_NEAR(beta_identity_check(1.0, 1.0, 2.0).lhs, 8.0 / 6.0, 1e-13);
}

TEST(Simplex, OneAndTwoDimensionalOracles) {
  EXPECT_NEAR(simplex_closed_form({0.4}, 1.0, 3.0), std::pow(2.0, 1.4) / 1.4, 1e-13);
  // n = 2, θ = (0, 0): area of the triangle (U−u)²/2.
  EXPECT_NEAR(simplex_closed_form({0.0, 0.0}, 0.0, 2.0), 2.0, 1e-13);
  // n = 2, θ = (1, 0): ∫∫_{t1<t2} t1 = (U)^3/6 on [0, U].
  EXPECT_NEAR(simplex_closed_form({1.0, 0.0}, 0.0, 1.5), std::pow(1.5, 3) / 6, 1e-13);
}

TEST(Simplex, MonteCarloAgreesWithClosedForm) {
  RngStream rng(17, {0, 0});
  const auto c = simplex_integral_check({-0.3, 0.5, 0.2}, 0.5, 2.0, 200000, rng);
  EXPECT_NEAR(c.closed_form, c.gamma_form, 1e-12 * c.closed_form);
  EXPECT_LT(std::abs(c.z_score), 4.0);
  EXPECT_THROW(simplex_closed_form({-1.5}, 0.0, 1.0), std::invalid_argument);
}

TEST(GammaRatio, MatchesDirectEvaluationAndIsBounded) {
  std::vector<std::size_t> ns;
  for (std::size_t n = 1; n <= 150; ++n) ns.push_back(n);
  const auto rep = gamma_ratio_bound_check(ns, 0.5);
  for (const auto& r : rep.rows) {
    const double n = static_cast<double>(r.n);
    const double direct = std::exp((std::lgamma(n + 1) - std::lgamma(0.5 * n)) / n) / std::pow(n, 0.5);
    EXPECT_NEAR(r.constant, direct, 1e-10 * direct);
  }
  EXPECT_TRUE(rep.bounded);
  EXPECT_TRUE(rep.tail_non_increasing);
  EXPECT_THROW(gamma_ratio_bound_check(ns, 1.5), std::invalid_argument);
}
