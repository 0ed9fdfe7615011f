#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "ltlab/core/grid.hpp"
#include "ltlab/core/numeric.hpp"
#include "ltlab/core/process.hpp"
#include "ltlab/core/rng.hpp"
#include "ltlab/core/stats.hpp"

using namespace ltlab;

// Known-answer vectors of the Random123 distribution (kat_vectors, philox4x32 10 rounds).
TEST(Philox, KnownAnswerZero) {
  const auto r = philox4x32_10({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(r[0], 0x6627e8d5u);
  EXPECT_EQ(r[1], 0xe169c58du);
  EXPECT_EQ(r[2], 0xbc57ac4cu);
  EXPECT_EQ(r[3], 0x9b00dbd8u);
}

TEST(Philox, KnownAnswerOnes) {
  const auto r = philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(r[0], 0x408f276du);
  EXPECT_EQ(r[1], 0x41c83b0eu);
  EXPECT_EQ(r[2], 0xa20bc7c6u);
  EXPECT_EQ(r[3], 0x6d5451fdu);
}

TEST(Philox, KnownAnswerPi) {
  const auto r = philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(r[0], 0xd16cfe09u);
  EXPECT_EQ(r[1], 0x94fdccebu);
  EXPECT_EQ(r[2], 0x5001e420u);
  EXPECT_EQ(r[3], 0x24126ea1u);
}

TEST(RngStream, SameSeedSameStream) {
  RngStream a(42, {1, 3}), b(42, {1, 3});
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.normal(), b.normal());
}

TEST(RngStream, DistinctStreamsDiffer) {
  std::set<std::uint64_t> first;
  for (std::uint32_t e = 0; e < 4; ++e)
    for (std::uint32_t r = 0; r < 16; ++r) first.insert(RngStream(1, {e, r})());
  EXPECT_EQ(first.size(), 64u);
  EXPECT_NE(RngStream(1, {0, 0})(), RngStream(2, {0, 0})());
}

TEST(RngStream, ReplicaMatchesDirectConstruction) {
  const RngStream base(9, {5, 0});
  RngStream a = base.replica(7), b(9, {5, 7});
  for (int i = 0; i < 50; ++i) ASSERT_EQ(a(), b());
}

TEST(RngStream, UniformInOpenIntervalWithCorrectMoments) {
  RngStream s(3, {0, 0});
  std::vector<double> u(200000);
  for (double& x : u) {
    x = s.uniform();
    ASSERT_GT(x, 0.0);
    ASSERT_LT(x, 1.0);
  }
  const auto sum = summarize(u);
  EXPECT_NEAR(sum.mean, 0.5, 4 * std::sqrt(1.0 / 12 / u.size()));
  EXPECT_NEAR(sum.stddev * sum.stddev, 1.0 / 12, 0.002);
}

TEST(RngStream, NormalMomentsAndKs) {
  RngStream s(4, {0, 0});
  std::vector<double> z(100000);
  s.fill_normal(z);
  const auto sum = summarize(z);
  EXPECT_NEAR(sum.mean, 0.0, 4.0 / std::sqrt(z.size()));
  EXPECT_NEAR(sum.stddev, 1.0, 0.01);
  // Compare against Box-Muller normals from an independent uniform stream.
  RngStream t(5, {0, 0});
  std::vector<double> box(50000);
  for (std::size_t i = 0; i < box.size(); ++i) {
    const double u1 = t.uniform(), u2 = t.uniform();
    box[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
  EXPECT_GT(ks_two_sample(z, box).p_value, 1e-3);
}

TEST(TimeGrid, PointsAndEndpoints) {
  const TimeGrid g(0.5, 2.0, 3);
  EXPECT_EQ(g.n_points(), 4u);
  EXPECT_DOUBLE_EQ(g.step(), 0.5);
  EXPECT_EQ(g.point(3), 2.0);
  EXPECT_EQ(g.point(0), 0.5);
  EXPECT_EQ(g.nearest_index(1.24), 1u);
  EXPECT_EQ(g.nearest_index(99.0), 3u);
}

TEST(TimeGrid, PinnedEndpointForAwkwardSteps) {
  const TimeGrid g(0.0, 0.3, 7);
  EXPECT_EQ(g.point(7), 0.3);
  const auto pts = g.points();
  for (std::size_t k = 1; k < pts.size(); ++k) EXPECT_GT(pts[k], pts[k - 1]);
}

TEST(TimeGrid, Coarsening) {
  const TimeGrid g(0.0, 1.0, 16);
  const TimeGrid c = g.coarsened(4);
  EXPECT_EQ(c.n_steps(), 4u);
  EXPECT_EQ(c.point(1), g.point(4));
  EXPECT_THROW(g.coarsened(3), std::invalid_argument);
}

TEST(TimeGrid, RejectsBadInput) {
  EXPECT_THROW(TimeGrid(1.0, 1.0, 4), std::invalid_argument);
  EXPECT_THROW(TimeGrid(0.0, 1.0, 0), std::invalid_argument);
}

TEST(ProcessSpec, DefaultsPerClass) {
  const auto f = ProcessSpec::defaults(ProcessClass::fbm, 1, 0.3);
  EXPECT_DOUBLE_EQ(f.alpha, 0.3);
  EXPECT_DOUBLE_EQ(f.theta, 0.0);
  EXPECT_DOUBLE_EQ(f.iota, 0.5);
  const auto r = ProcessSpec::defaults(ProcessClass::rosenblatt, 1, 0.7);
  EXPECT_DOUBLE_EQ(r.iota, 1.0);
  const auto s = ProcessSpec::defaults(ProcessClass::fbm_sde, 2, 0.6);
  EXPECT_DOUBLE_EQ(s.theta, 4.0 / 0.6);
  EXPECT_EQ(s.x0.size(), 2u);
}

TEST(ProcessSpec, LocalTimeRegime) {
  auto s = ProcessSpec::defaults(ProcessClass::fbm, 1, 0.7);
  EXPECT_NO_THROW(s.require_local_time_regime());
  s.d = 2;
  try {
    s.require_local_time_regime();
    FAIL() << "expected HypothesisViolation";
  } catch (const HypothesisViolation& e) {
    EXPECT_NE(std::string(e.what()).find("α ∈ (0,1/d)"), std::string::npos);
  }
}

TEST(ProcessSpec, ValidateRejectsOutOfRange) {
  auto s = ProcessSpec::defaults(ProcessClass::rosenblatt, 1, 0.4);
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = ProcessSpec::defaults(ProcessClass::fbm, 0, 0.5);
  EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(SamplePath, LayoutAndSubsampling) {
  const TimeGrid g(0.0, 1.0, 4);
  std::vector<double> v{0, 10, 1, 11, 2, 12, 3, 13, 4, 14};
  const SamplePath p(g, 2, v, 1, ProcessSpec{});
  EXPECT_EQ(p.value(2, 1), 12.0);
  EXPECT_EQ(p.component(0), (std::vector<double>{0, 1, 2, 3, 4}));
  const SamplePath s = p.subsampled(2);
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s.value(1, 0), 2.0);
  EXPECT_THROW(SamplePath(g, 2, std::vector<double>(3), 1, ProcessSpec{}), std::invalid_argument);
}

TEST(Numeric, CompensatedSumRecoversSmallTerms) {
  CompensatedSum s;
  s.add(1e16);
  for (int i = 0; i < 1000; ++i) s.add(1.0);
  s.add(-1e16);
  EXPECT_EQ(s.value(), 1000.0);
}

TEST(Numeric, GaussLegendreExactForPolynomials) {
  for (std::size_t n : {2u, 5u, 12u, 48u}) {
    const auto& rule = gauss_legendre(n);
    double w = 0.0;
    for (double x : rule.weights) w += x;
    EXPECT_NEAR(w, 2.0, 1e-13);
    // ∫_{-1}^{1} x^{2n-2} = 2 / (2n-1)
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m += rule.weights[i] * std::pow(rule.nodes[i], 2.0 * n - 2.0);
    EXPECT_NEAR(m, 2.0 / (2.0 * n - 1.0), 1e-12);
  }
}

TEST(Numeric, SingularEndpointIntegrals) {
  // ∫_0^1 s^{-1/2} cos(s) ds: Fresnel-type reference from series Σ (-1)^k / ((2k)!(2k+1/2)).
  double ref = 0.0, fact = 1.0;
  for (int k = 0; k < 20; ++k) {
    if (k > 0) fact *= (2.0 * k - 1) * (2.0 * k);
    ref += (k % 2 ? -1.0 : 1.0) / (fact * (2.0 * k + 0.5));
  }
  const double v = integrate_left_singular([](double s) { return std::cos(s) / std::sqrt(s); }, 0.0, 1.0, -0.5);
  EXPECT_NEAR(v, ref, 1e-12);
  const double w =
      integrate_right_singular([](double s) { return std::cos(1.0 - s) / std::sqrt(1.0 - s); }, 0.0, 1.0, -0.5);
  EXPECT_NEAR(w, ref, 1e-12);
}

TEST(Stats, LinearFitExactLine) {
  std::vector<double> x{0, 1, 2, 3, 4}, y;
  for (double v : x) y.push_back(3.0 - 2.0 * v);
  const auto f = linear_fit(x, y);
  EXPECT_NEAR(f.slope, -2.0, 1e-14);
  EXPECT_NEAR(f.intercept, 3.0, 1e-14);
  EXPECT_NEAR(f.slope_se, 0.0, 1e-12);
}

TEST(Stats, LinearFitStandardErrorMatchesClosedForm) {
  std::vector<double> x{1, 2, 3, 4, 5, 6}, y{1.1, 1.9, 3.2, 3.8, 5.1, 6.0};
  const auto f = linear_fit(x, y);
  // Independent computation of the textbook formulas.
  const double n = 6, mx = 3.5;
  double my = 0, sxx = 0, sxy = 0;
  for (double v : y) my += v / n;
  for (int i = 0; i < 6; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double b = sxy / sxx, a = my - b * mx;
  double rss = 0;
  for (int i = 0; i < 6; ++i) rss += std::pow(y[i] - a - b * x[i], 2);
  EXPECT_NEAR(f.slope, b, 1e-13);
  EXPECT_NEAR(f.slope_se, std::sqrt(rss / (n - 2) / sxx), 1e-13);
  // t_{0.975, 4} = 2.7764451
  EXPECT_NEAR(f.ci_high - f.slope, 2.7764451 * f.slope_se, 1e-6);
}

TEST(Stats, MannKendallDetectsTrend) {
  std::vector<double> up{1, 2, 3, 4, 5, 6, 7, 8}, down{8, 7, 6, 5, 4, 3, 2, 1};
  EXPECT_LT(mann_kendall(up).p_increasing, 0.001);
  EXPECT_GT(mann_kendall(down).p_increasing, 0.99);
  // Exact null for n = 4 strictly increasing: P(S >= 6) = 1/24.
  std::vector<double> four{1, 2, 3, 4};
  EXPECT_NEAR(mann_kendall(four).p_increasing, 1.0 / 24.0, 1e-12);
}

TEST(Stats, QuantileAndSkewness) {
  std::vector<double> xs{5, 1, 3, 2, 4};
  EXPECT_DOUBLE_EQ(quantile(xs, 0.5), 3.0);
  EXPECT_DOUBLE_EQ(quantile(xs, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(quantile(xs, 1.0), 5.0);
  RngStream s(8, {0, 0});
  std::vector<double> e(50000);
  for (double& v : e) v = -std::log(s.uniform());
  // Exponential skewness is 2.
  EXPECT_NEAR(skewness(e).value, 2.0, 0.15);
}

TEST(Stats, PearsonCorrelation) {
  std::vector<double> x{1, 2, 3, 4}, y{2, 4, 6, 8}, z{4, 3, 2, 1};
  EXPECT_NEAR(pearson_correlation(x, y), 1.0, 1e-14);
  EXPECT_NEAR(pearson_correlation(x, z), -1.0, 1e-14);
}
