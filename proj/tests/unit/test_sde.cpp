#include <gtest/gtest.h>

#include <cmath>

#include "ltlab/gaussian/sampler.hpp"
#include "ltlab/sde/convergence.hpp"
#include "ltlab/sde/solver.hpp"
#include "ltlab/sde/vector_fields.hpp"

using namespace ltlab;
using namespace ltlab::sde;

namespace {
SamplePath fbm_driver(double hurst, int d, std::size_t steps, std::uint64_t seed) {
  RngStream rng(seed, {0, 0});
  ProcessSpec spec = ProcessSpec::defaults(ProcessClass::fbm, d, hurst);
  return gaussian::GaussianSampler(gaussian::CovarianceSpec::fbm(hurst), TimeGrid(0.0, 1.0, steps))
      .sample(d, rng, spec);
}
}  // namespace

TEST(VectorFields, CatalogAndUnknownNames) {
  for (const auto& n : drift_catalog()) EXPECT_NO_THROW(make_vector_fields(n, "identity", 2));
  for (const auto& n : diffusion_catalog()) EXPECT_NO_THROW(make_vector_fields("zero", n, 2));
  EXPECT_THROW(make_vector_fields("nope", "identity", 1), std::invalid_argument);
  EXPECT_THROW(make_vector_fields("zero", "nope", 1), std::invalid_argument);
  EXPECT_THROW(make_vector_fields("zero", "identity", 0), std::invalid_argument);
}

TEST(VectorFields, ComposeSumAddsPointwise) {
  const auto a = make_vector_fields("linear", "identity", 2, 2.0);
  const auto b = make_vector_fields("trig", "trig", 2);
  const auto s = compose_sum(a, b);
  const Eigen::Vector2d x(0.3, -1.2);
  EXPECT_LT((s.drift(x) - a.drift(x) - b.drift(x)).norm(), 1e-15);
  EXPECT_LT((s.diffusion(x) - a.diffusion(x) - b.diffusion(x)).norm(), 1e-15);
  EXPECT_THROW(compose_sum(a, make_vector_fields("zero", "zero", 3)), std::invalid_argument);
}

TEST(VectorFields, EllipticityOfDiagonalField) {
  // diag(1, 1/(1+x₁²)+1): smallest eigenvalue of VVᵀ is 1, and it is approached in direction e_1.
  const auto f = make_vector_fields("zero", "diag-elliptic", 2);
  RngStream r(11, {0, 0});
  std::vector<Eigen::VectorXd> pts, dirs;
  for (int i = 0; i < 50; ++i) pts.push_back(Eigen::Vector2d(3 * r.normal(), 3 * r.normal()));
  for (int i = 0; i < 200; ++i) dirs.push_back(Eigen::Vector2d(r.normal(), r.normal()));
  const double e = check_ellipticity(f, pts, dirs);
  EXPECT_GE(e, 1.0 - 1e-12);
  EXPECT_LT(e, 1.1);
  const auto z = make_vector_fields("zero", "zero", 2);
  EXPECT_EQ(check_ellipticity(z, pts, dirs), 0.0);
}

TEST(Solver, SchemeRangeIsEnforced) {
  EXPECT_NO_THROW(require_scheme_supported(Scheme::euler_young, 0.7));
  EXPECT_THROW(require_scheme_supported(Scheme::euler_young, 0.4), std::invalid_argument);
  EXPECT_NO_THROW(require_scheme_supported(Scheme::milstein_level2, 0.4));
  EXPECT_THROW(require_scheme_supported(Scheme::milstein_level2, 0.3), std::invalid_argument);
  EXPECT_EQ(scheme_from_string(to_string(Scheme::milstein_level2)), Scheme::milstein_level2);
  EXPECT_THROW(scheme_from_string("rk4"), std::invalid_argument);
}

TEST(Solver, AdditiveNoiseIsReproducedExactly) {
  const auto f = make_vector_fields("zero", "identity", 2);
  const SamplePath b = fbm_driver(0.7, 2, 256, 1);
  const Eigen::Vector2d x0(1.0, -2.0);
  const auto sol = solve_sde(f, x0, b, Scheme::euler_young);
  for (std::size_t k = 0; k < b.size(); ++k)
    for (int l = 0; l < 2; ++l) EXPECT_NEAR(sol.path.value(k, l), x0(l) + b.value(k, l), 1e-13);
}

TEST(Solver, AdditiveNoiseAcceptsRoughDrivers) {
  EXPECT_NO_THROW(require_scheme_supported(Scheme::euler_young, 0.2, true));
  const auto f = make_vector_fields("zero", "scaled-identity", 1, 3.0);
  EXPECT_TRUE(f.constant_diffusion);
  EXPECT_FALSE(compose_sum(f, make_vector_fields("zero", "linear", 1)).constant_diffusion);
  const SamplePath b = fbm_driver(0.2, 1, 512, 8);
  const auto sol = solve_sde(f, Eigen::VectorXd::Zero(1), b, Scheme::euler_young);
  for (std::size_t k = 0; k < b.size(); ++k) EXPECT_NEAR(sol.path.value(k), 3.0 * b.value(k), 1e-12);
}

TEST(Solver, LinearDiffusionApproachesExponential) {
  // dX = X dB for H > 1/2 has the pathwise solution x0 exp(B_t).
  const auto f = make_vector_fields("zero", "linear", 1);
  const SamplePath b = fbm_driver(0.7, 1, 4096, 2);
  const Eigen::VectorXd x0 = Eigen::VectorXd::Constant(1, 1.0);
  const auto eu = solve_sde(f, x0, b, Scheme::euler_young);
  const auto mi = solve_sde(f, x0, b, Scheme::milstein_level2);
  double e_eu = 0, e_mi = 0;
  for (std::size_t k = 0; k < b.size(); ++k) {
    const double ex = std::exp(b.value(k));
    e_eu = std::max(e_eu, std::abs(eu.path.value(k) - ex));
    e_mi = std::max(e_mi, std::abs(mi.path.value(k) - ex));
  }
  EXPECT_LT(e_eu, 0.1);
  EXPECT_LT(e_mi, e_eu);
}

TEST(Solver, RejectsMismatchedInputsAndBlowsUp) {
  const auto f = make_vector_fields("zero", "identity", 2);
  const SamplePath b1 = fbm_driver(0.7, 1, 16, 3);
  EXPECT_THROW(solve_sde(f, Eigen::VectorXd::Zero(2), b1, Scheme::euler_young), std::invalid_argument);
  const auto g = make_vector_fields("linear", "zero", 1, -1e4);  // drift +1e4·x
  EXPECT_THROW(solve_sde(g, Eigen::VectorXd::Constant(1, 1.0), b1, Scheme::euler_young), BlowUpError);
}

TEST(Convergence, SelfConvergenceRateIsPositive) {
  const auto f = make_vector_fields("trig", "trig", 1);
  const auto res = convergence_study(f, Eigen::VectorXd::Constant(1, 0.5), 0.7, {32, 64, 128, 256, 512}, 40,
                                     RngStream(4, {0, 0}));
  EXPECT_TRUE(res.self.pass);
  EXPECT_GT(res.self.fit.slope, 0.2);
  EXPECT_EQ(res.exact.levels.size(), 0u);
  EXPECT_EQ(res.refinement_factors.size(), 3u);
}

TEST(Convergence, ExactErrorRateForGeometricCase) {
  const auto f = make_vector_fields("zero", "linear", 1);
  const ExactSolution ex = [](const Eigen::VectorXd& x, std::span<const double> b) {
    return Eigen::VectorXd::Constant(1, x(0) * std::exp(b[0]));
  };
  const auto res = convergence_study(f, Eigen::VectorXd::Constant(1, 1.0), 0.7, {64, 128, 256, 512, 1024}, 50,
                                     RngStream(5, {0, 0}), Scheme::euler_young, ex);
  ASSERT_EQ(res.exact.levels.size(), 5u);
  EXPECT_NEAR(res.exact.fit.slope, 2 * 0.7 - 1, 0.15);
}

TEST(Convergence, RejectsNonNestedLevels) {
  const auto f = make_vector_fields("zero", "identity", 1);
  EXPECT_THROW(convergence_study(f, Eigen::VectorXd::Zero(1), 0.7, {64, 96}, 2, RngStream(1, {0, 0})),
               std::invalid_argument);
  EXPECT_THROW(convergence_study(f, Eigen::VectorXd::Zero(1), 0.7, {64}, 2, RngStream(1, {0, 0})),
               std::invalid_argument);
}
