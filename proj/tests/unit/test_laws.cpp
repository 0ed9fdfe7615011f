#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ltlab/gaussian/charfn.hpp"
#include "ltlab/laws/berman.hpp"
#include "ltlab/laws/moments.hpp"
#include "ltlab/laws/path_source.hpp"
#include "ltlab/laws/scaling.hpp"
#include "ltlab/laws/tails.hpp"

using namespace ltlab;
using namespace ltlab::laws;

TEST(Normalizers, ClosedForms) {
  const double r = 1e-3, a = 0.5, th = 0.0;
  const int d = 1;
  EXPECT_NEAR(limsup_normalizer(r, a, d, th), std::pow(r, 0.5) * std::pow(std::log(std::log(1 / r)), 0.5), 1e-15);
  EXPECT_NEAR(limsup_normalizer_uniform(r, a, d, th), std::pow(r, 0.5) * std::pow(std::log(1 / r), 0.5), 1e-15);
  EXPECT_NEAR(chung_normalizer(r, a, d, th), std::pow(r, 0.5) * std::pow(std::log(std::log(1 / r)), -0.5), 1e-15);
  EXPECT_THROW(limsup_normalizer(0.5, a, d, th), std::domain_error);
}

TEST(BinWidth, ExplicitClampAndDefault) {
  const TimeGrid g(0.0, 1.0, 1024);
  EXPECT_EQ(resolve_bin_width({2.0, 0.03, true}, g, 0.5, 1e-4), 0.03);
  const double def = resolve_bin_width({2.0, 0.0, false}, g, 0.5, 1e-4);
  EXPECT_NEAR(def, 2.0 * std::pow(1.0 / 1024, 0.5), 1e-15);
  const double clamped = resolve_bin_width({2.0, 0.0, true}, g, 0.5, 1.0 / 256);
  EXPECT_LE(clamped, 0.1 * std::pow(1.0 / 256, 0.5) + 1e-15);
}

TEST(LocationMode, RoundTrip) {
  EXPECT_EQ(location_mode_from_string(to_string(LocationMode::shifted)), LocationMode::shifted);
  EXPECT_THROW(location_mode_from_string("moving"), std::invalid_argument);
}

TEST(AnalyzeTail, RecoversExponentialRate) {
  // L = |I|^{1−αd}·U^{α(d+θ)} with U ~ Exp(2): P(L ≥ threshold(u)) = e^{−2u}.
  std::mt19937_64 g(9);
  std::exponential_distribution<double> e(2.0);
  const double expo = 0.5, scale = 0.8;
  std::vector<double> s(200000);
  for (double& v : s) v = scale * std::pow(e(g), expo);
  std::vector<double> u;
  for (int i = 1; i <= 10; ++i) u.push_back(0.4 * i);
  const auto rep = analyze_tail(s, expo, scale, u, 1.0);
  EXPECT_TRUE(rep.pass);
  EXPECT_TRUE(rep.decreasing);
  EXPECT_GT(rep.rate_ci_high, 2.0 - 0.05);
  EXPECT_LT(rep.rate_ci_low, 2.0 + 0.05);
  for (const auto& l : rep.levels) {
    if (l.exceedances < 100) continue;
    EXPECT_NEAR(l.log_probability, -2.0 * l.u, 4 * l.se_log) << l.u;
  }
}

TEST(AnalyzeTail, TruncatesSparseLevels) {
  std::vector<double> s(1000);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<double>(i) / 1000.0;
  const auto rep = analyze_tail(s, 1.0, 1.0, {0.1, 0.5, 0.99, 2.0}, 0.0);
  EXPECT_EQ(rep.truncated, 2u);
}

TEST(Berman, BrownianMotionConvergesInOneDimension) {
  const auto cf = gaussian::gaussian_increment_charfn(gaussian::CovarianceSpec::fbm(0.5), 1);
  const auto rep = berman_criterion(cf, 0.5, 1.0, 10, 10, 40);
  EXPECT_EQ(rep.verdict, BermanVerdict::converges);
  EXPECT_NEAR(rep.tail_ratio, rep.predicted_ratio, 0.05);
  // Closed form: ∫_ℝ ∫∫ e^{−ξ²|t−s|/2} = ∫∫ √(2π/|t−s|) ds dt = 8√(2π)/3.
  EXPECT_NEAR(rep.extrapolated, 8.0 * std::sqrt(2 * M_PI) / 3.0, 0.02 * 8.0 * std::sqrt(2 * M_PI) / 3.0);
}

TEST(Berman, DivergesWhenAlphaDExceedsOne) {
  const auto cf = gaussian::gaussian_increment_charfn(gaussian::CovarianceSpec::fbm(0.7), 2);
  const auto rep = berman_criterion(cf, 0.7, 1.0, 8, 8, 40);
  EXPECT_EQ(rep.verdict, BermanVerdict::diverges);
  EXPECT_NEAR(rep.tail_ratio, std::pow(2.0, 2 - 1 / 0.7), 0.1);
  for (std::size_t i = 1; i < rep.partial_sums.size(); ++i) EXPECT_GT(rep.partial_sums[i], rep.partial_sums[i - 1]);
}

TEST(PathSource, DrawsAllClasses) {
  const TimeGrid g(0.0, 1.0, 64);
  for (auto cls : {ProcessClass::fbm, ProcessClass::quasi_helix, ProcessClass::rosenblatt, ProcessClass::fbm_sde}) {
    ProcessSpec s = ProcessSpec::defaults(cls, 1, 0.7);
    if (cls == ProcessClass::rosenblatt) s.rank = 32;
    const PathSource src(s, g);
    RngStream r(1, {0, 0});
    const SamplePath p = src.draw(r);
    EXPECT_EQ(p.size(), 65u);
    EXPECT_EQ(p.dim(), 1);
  }
}

TEST(MomentScan, BrownianSlopeMatchesTarget) {
  const ProcessSpec s = ProcessSpec::defaults(ProcessClass::fbm, 1, 0.5);
  const TimeGrid g(0.0, 1.0, 4096);
  std::vector<double> lags{1.0, 0.5, 0.25, 0.125, 0.0625};
  const auto rep = moment_scan(s, g, {0.0}, {1, 2}, lags, 600, RngStream(2, {0, 0}), LocationMode::shifted);
  ASSERT_EQ(rep.fits.size(), 2u);
  EXPECT_NEAR(rep.fits[0].slope, 0.5, 0.1);
  EXPECT_NEAR(rep.fits[1].slope, 1.0, 0.2);
  EXPECT_TRUE(rep.pass);
}

TEST(MomentScan, RejectsSupercriticalRegime) {
  const ProcessSpec s = ProcessSpec::defaults(ProcessClass::fbm, 2, 0.7);
  EXPECT_THROW(moment_scan(s, TimeGrid(0, 1, 64), {0.0, 0.0}, {1}, {0.5, 0.25}, 2, RngStream(1, {0, 0})),
               HypothesisViolation);
}

TEST(LimsupScan, SmallBrownianScan) {
  const ProcessSpec s = ProcessSpec::defaults(ProcessClass::fbm, 1, 0.5);
  const auto res = limsup_ratio_scan(s, TimeGrid(0.0, 1.0, 8192), 0.5, {2, 3, 4, 5, 6}, 300, RngStream(3, {0, 0}));
  EXPECT_NEAR(res.fixed.fit.slope, 0.5, 0.1);
  EXPECT_GT(res.fixed.trend_p_value, 1e-3);
  EXPECT_EQ(res.uniform.levels.size(), res.fixed.levels.size());
}

TEST(ChungScan, SmallFbmScan) {
  const ProcessSpec s = ProcessSpec::defaults(ProcessClass::fbm, 1, 0.3);
  const auto rep = chung_ratio_scan(s, TimeGrid(0.0, 1.0, 4096), {0.5}, {3, 4, 5, 6, 7}, 200, RngStream(4, {0, 0}));
  EXPECT_NEAR(rep.fit.slope, 0.3, 0.1);
  EXPECT_GT(rep.ratio_floor, 0.0);
  EXPECT_TRUE(rep.pass);
}

TEST(Oscillation, LineOscillation) {
  std::vector<double> v(65);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = static_cast<double>(k) / 64.0;
  const SamplePath p(TimeGrid(0, 1, 64), 1, v, 0, ProcessSpec{});
  const auto o = oscillation_levels(p, 0.5, {0.25, 0.125});
  EXPECT_NEAR(o[0], 0.25, 1e-12);
  EXPECT_NEAR(o[1], 0.125, 1e-12);
}

TEST(TailProbe, BrownianExponentialTail) {
  const ProcessSpec s = ProcessSpec::defaults(ProcessClass::fbm, 1, 0.5);
  const auto rep = tail_probe(s, TimeGrid(0.0, 1.0, 1024), 0.0, 1.0, LocationMode::shifted, {0.0}, {}, 4000,
                              RngStream(5, {0, 0}));
  EXPECT_TRUE(rep.pass);
  EXPECT_GT(rep.rate, 0.0);
}
