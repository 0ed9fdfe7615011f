#include "ltlab/analytics/integrals.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <stdexcept>

#include "ltlab/core/numeric.hpp"
#include "ltlab/core/stats.hpp"

namespace ltlab::analytics {

namespace {
// ∫_a^b f where f behaves like (s − a)^p g(s) with g smooth: panels halve towards
// a, so s^p is smooth on each, and the innermost panel uses the power substitution.
double graded_left(const std::function<double(double)>& f, double a, double b, double p) {
  double hi = b - a, sum = 0.0;
  for (int k = 0; k < 40; ++k) {
    const double lo = 0.5 * hi;
    sum += integrate(f, a + lo, a + hi, 20);
    hi = lo;
  }
  return sum + integrate_left_singular(f, a, a + hi, std::min(p, 0.0), 20);
}
}  // namespace

BetaIdentity beta_identity_check(double theta1, double theta2, double t) {
  if (!(theta1 > -1.0) || !(theta2 > -1.0)) throw std::invalid_argument("beta_identity_check: need theta > -1");
  if (!(t > 0.0)) throw std::invalid_argument("beta_identity_check: need t > 0");
  auto f = [=](double s) { return std::pow(t - s, theta1) * std::pow(s, theta2); };
  // Right half in the distance r = t − s to the endpoint, so no cancellation near it.
  auto g = [=](double r) { return std::pow(r, theta1) * std::pow(t - r, theta2); };
  const double mid = 0.5 * t;
  BetaIdentity out;
  out.lhs = graded_left(f, 0.0, mid, theta2) + graded_left(g, 0.0, t - mid, theta1);
  out.rhs = std::pow(t, 1.0 + theta1 + theta2) * boost::math::beta(1.0 + theta1, 1.0 + theta2);
  out.relative_difference = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);
  return out;
}

double simplex_closed_form(const std::vector<double>& thetas, double u, double U) {
  const std::size_t n = thetas.size();
  if (n == 0 || n > 6) throw std::invalid_argument("simplex: need 1 <= n <= 6 exponents");
  if (!(U > u)) throw std::invalid_argument("simplex: need u < U");
  double partial = 0.0;
  double log_prod = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (!(thetas[j] > -1.0)) throw std::invalid_argument("simplex: exponents must exceed -1");
    if (j >= 1) {
      const double a = static_cast<double>(j) + partial;  // (j+1) − 1 + Σ_{k<j+1} θ_k in 1-based terms
      if (!(a > 0.0)) throw std::invalid_argument("simplex: Beta argument j-1+sum(theta) must be positive");
      log_prod += std::lgamma(a) + std::lgamma(1.0 + thetas[j]) - std::lgamma(a + 1.0 + thetas[j]);
    }
    partial += thetas[j];
  }
  const double e = static_cast<double>(n) + partial;
  return std::exp(log_prod + e * std::log(U - u)) / e;
}

SimplexCheck simplex_integral_check(const std::vector<double>& thetas, double u, double U,
                                    std::size_t mc_samples, RngStream& rng) {
  if (mc_samples < 2) throw std::invalid_argument("simplex: need at least two Monte Carlo samples");
  SimplexCheck out;
  out.closed_form = simplex_closed_form(thetas, u, U);
  const std::size_t n = thetas.size();
  double sum_theta = 0.0, log_g = 0.0;
  for (double th : thetas) {
    sum_theta += th;
    log_g += std::lgamma(1.0 + th);
  }
  const double e = static_cast<double>(n) + sum_theta;
  out.gamma_form = std::exp(log_g - std::lgamma(e + 1.0) + e * std::log(U - u));

  const double volume = std::pow(U - u, static_cast<double>(n)) / std::tgamma(static_cast<double>(n) + 1.0);
  std::vector<double> vals(mc_samples), t(n);
  for (std::size_t i = 0; i < mc_samples; ++i) {
    for (auto& x : t) x = u + (U - u) * rng.uniform();
    std::sort(t.begin(), t.end());
    double prev = u, prod = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      prod *= std::pow(t[j] - prev, thetas[j]);
      prev = t[j];
    }
    vals[i] = volume * prod;
  }
  const SampleSummary s = summarize(vals);
  out.mc_estimate = s.mean;
  out.mc_std_error = s.std_error;
  out.z_score = s.std_error > 0.0 ? (s.mean - out.closed_form) / s.std_error : 0.0;
  return out;
}

GammaRatioReport gamma_ratio_bound_check(std::vector<std::size_t> n_list, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("gamma_ratio_bound_check: beta must lie in (0,1)");
  if (n_list.empty()) throw std::invalid_argument("gamma_ratio_bound_check: empty n list");
  std::sort(n_list.begin(), n_list.end());
  GammaRatioReport rep;
  rep.beta = beta;
  for (std::size_t n : n_list) {
    if (n == 0) throw std::invalid_argument("gamma_ratio_bound_check: n must be >= 1");
    const double nd = static_cast<double>(n);
    const double log_c = (std::lgamma(nd + 1.0) - std::lgamma(beta * nd)) / nd - (1.0 - beta) * std::log(nd);
    rep.rows.push_back({n, std::exp(log_c)});
    rep.sup = std::max(rep.sup, rep.rows.back().constant);
  }
  rep.tail_non_increasing = true;
  const std::size_t start = rep.rows.size() - std::max<std::size_t>(1, rep.rows.size() / 3);
  for (std::size_t i = start + 1; i < rep.rows.size(); ++i)
    if (rep.rows[i].constant > rep.rows[i - 1].constant * (1.0 + 1e-12)) rep.tail_non_increasing = false;
  rep.bounded = std::isfinite(rep.sup) && rep.tail_non_increasing;
  return rep;
}

}  // namespace ltlab::analytics
