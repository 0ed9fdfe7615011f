#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ltlab/gaussian/sampler.hpp"
#include "ltlab/localtime/box.hpp"
#include "ltlab/localtime/fourier.hpp"
#include "ltlab/localtime/histogram.hpp"
#include "ltlab/localtime/modulus.hpp"

using namespace ltlab;
using namespace ltlab::localtime;

namespace {
SamplePath make_path(std::vector<double> v, int d, double t_end = 1.0) {
  const std::size_t steps = v.size() / static_cast<std::size_t>(d) - 1;
  return SamplePath(TimeGrid(0.0, t_end, steps), d, std::move(v), 0, ProcessSpec{});
}
SamplePath line(double slope, std::size_t steps) {
  std::vector<double> v(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) v[k] = slope * static_cast<double>(k) / static_cast<double>(steps);
  return make_path(std::move(v), 1);
}
SamplePath bm(std::size_t steps, int d, std::uint64_t seed, double hurst = 0.5) {
  RngStream rng(seed, {0, 0});
  return gaussian::GaussianSampler(gaussian::CovarianceSpec::fbm(hurst), TimeGrid(0.0, 1.0, steps))
      .sample(d, rng, ProcessSpec::defaults(ProcessClass::fbm, d, hurst));
}
}  // namespace

TEST(Histogram, LinearPathHasFlatDensity) {
  // X_t = 2t spends 1/2 unit of time per unit of space on [0, 2].
  const SamplePath p = line(2.0, 1000);
  const SpatialBox box{{1.0}, {1.0}, {40}};
  const auto f = occupation_histogram(p, {0.0, 1.0}, box);
  for (double v : f.values) EXPECT_NEAR(v, 0.5, 1e-9);
  EXPECT_NEAR(f.mass(), 1.0, 1e-12);
  const double x = 0.73;
  EXPECT_NEAR(occupation_at(p, {0.0, 1.0}, std::span<const double>(&x, 1), 0.1), 0.5, 1e-9);
  // Sub-window [0.25, 0.5] covers space [0.5, 1].
  const double y = 0.6, z = 1.4;
  EXPECT_NEAR(occupation_at(p, {0.25, 0.5}, std::span<const double>(&y, 1), 0.1), 0.5, 1e-9);
  EXPECT_NEAR(occupation_at(p, {0.25, 0.5}, std::span<const double>(&z, 1), 0.1), 0.0, 1e-12);
}

TEST(Histogram, StepCrossingSeveralCellsIsSplitByLength) {
  // One step from 0 to 1 over time 1, cells of width 0.25: each gets 0.25 time.
  const SamplePath p = make_path({0.0, 1.0}, 1);
  const auto f = occupation_histogram(p, {0.0, 1.0}, SpatialBox{{0.5}, {0.5}, {4}});
  for (double v : f.values) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(Histogram, MassEqualsWindowLengthInTwoDimensions) {
  const SamplePath p = bm(2048, 2, 3);
  const TimeWindow w{0.2, 0.7};
  const SpatialBox box = SpatialBox::covering(p, w, 0.05);
  const auto f = occupation_histogram(p, w, box);
  EXPECT_TRUE(f.range_inside);
  EXPECT_NEAR(f.mass(), 0.5, 1e-9);
  for (double v : f.values) EXPECT_GE(v, 0.0);
}

TEST(Histogram, OccupationIdentityForSmoothTestFunction) {
  const SamplePath p = bm(4096, 1, 4);
  const TimeWindow w{0.0, 1.0};
  const auto f = occupation_histogram(p, w, SpatialBox::covering(p, w, 0.01));
  const auto g = [](std::span<const double> x) { return std::exp(-x[0] * x[0]) + 0.5; };
  EXPECT_LT(occupation_identity_check(p, f, g), 1e-3);
  // Independent oracle: trapezoid rule on the grid.
  double trap = 0.0;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) trap += 0.5 * (g(p.at(k)) + g(p.at(k + 1))) * p.grid().step();
  const double exact = path_integral(p, w, g);
  EXPECT_NEAR(exact, trap, 1e-4);
}

TEST(Histogram, PathIntegralExactForPolynomialOnLine) {
  const SamplePath p = line(1.0, 7);
  const double v = path_integral(p, {0.0, 1.0}, [](std::span<const double> x) { return x[0] * x[0] * x[0]; });
  EXPECT_NEAR(v, 0.25, 1e-14);
}

TEST(Histogram, WindowValidation) {
  const SamplePath p = line(1.0, 8);
  EXPECT_THROW(validate_window(p, {0.5, 0.25}), std::invalid_argument);
  EXPECT_THROW(validate_window(p, {-0.1, 0.5}), std::invalid_argument);
  std::vector<std::pair<double, double>> parts;
  for_each_window_step(p, {0.0625, 0.25}, [&](std::size_t, double a, double b) { parts.emplace_back(a, b); });
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_NEAR(parts[0].first, 0.5, 1e-12);
  EXPECT_NEAR(parts[1].second, 1.0, 1e-12);
}

TEST(Histogram, SupLocalTimeOfLine) {
  EXPECT_NEAR(sup_localtime(line(4.0, 4000), {0.0, 1.0}, 0.125), 0.25, 1e-9);
}

TEST(Fourier, DirichletSumClosedFormMatchesLoop) {
  for (double y : {0.0, 0.3, -1.7, 5.0}) {
    const double cutoff = 10.0;
    const std::size_t count = 80;
    const double dxi = 2 * cutoff / count;
    double s = 0.0;
    for (std::size_t j = 0; j < count; ++j) s += dxi * std::cos((-cutoff + (j + 0.5) * dxi) * y);
    EXPECT_NEAR(dirichlet_sum(y, cutoff, count), s, 1e-10) << y;
  }
}

TEST(Fourier, AgreesWithHistogramOnBrownianPath) {
  const SamplePath p = bm(8192, 1, 5);
  const TimeWindow w{0.0, 1.0};
  const auto h = occupation_histogram(p, w, SpatialBox::covering(p, w, 0.05));
  double worst = 0.0;
  for (std::size_t c = 0; c < h.values.size(); c += 3) {
    const auto x = h.box.cell_center(c);
    const double ref = occupation_at(p, w, x, 0.1);
    const auto f = fourier_localtime(p, w, x, 60.0, default_freq_step(p, w, x, 60.0));
    worst = std::max(worst, std::abs(f.value - ref));
  }
  EXPECT_LT(worst, 0.15);
}

TEST(Fourier, LinearPathValue) {
  const SamplePath p = line(1.0, 2000);
  const double x = 0.5;
  const auto f = fourier_localtime(p, {0.0, 1.0}, std::span<const double>(&x, 1), 200.0, 0.5);
  EXPECT_NEAR(f.value, 1.0, 0.02);
}

TEST(Modulus, LineHasExactOscillation) {
  const SamplePath p = line(3.0, 64);
  EXPECT_NEAR(max_oscillation(p, 0.25), 0.75, 1e-12);
  EXPECT_THROW(max_oscillation(p, 0.3 / 64.0), std::invalid_argument);
}

TEST(Modulus, FbmSlopeNearHurst) {
  std::vector<SamplePath> paths;
  for (std::uint64_t s = 0; s < 20; ++s) paths.push_back(bm(4096, 1, 100 + s, 0.7));
  std::vector<double> hs;
  for (int j = 2; j <= 8; ++j) hs.push_back(std::ldexp(1.0, -j));
  const auto rep = modulus_of_continuity(paths, hs, 0.7, 0.5);
  EXPECT_NEAR(rep.normalized_fit.slope, 0.7, 0.1);
  EXPECT_EQ(rep.levels.size(), hs.size());
}
