#include "ltlab/core/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ltlab/core/numeric.hpp"

namespace ltlab {

SampleSummary summarize(std::span<const double> xs) {
  SampleSummary s;
  s.n = xs.size();
  if (s.n == 0) return s;
  s.mean = compensated_sum(xs) / static_cast<double>(s.n);
  if (s.n > 1) {
    CompensatedSum ss;
    for (double x : xs) ss.add((x - s.mean) * (x - s.mean));
    s.stddev = std::sqrt(ss.value() / static_cast<double>(s.n - 1));
    s.std_error = s.stddev / std::sqrt(static_cast<double>(s.n));
  }
  return s;
}

double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw std::invalid_argument("quantile: empty sample");
  std::sort(xs.begin(), xs.end());
  const double pos = q * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, xs.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return xs[lo] * (1.0 - frac) + xs[hi] * frac;
}

SkewnessEstimate skewness(std::span<const double> xs) {
  const SampleSummary s = summarize(xs);
  CompensatedSum m3;
  CompensatedSum m2;
  for (double x : xs) {
    const double c = x - s.mean;
    m2.add(c * c);
    m3.add(c * c * c);
  }
  const double n = static_cast<double>(xs.size());
  const double g = (m3.value() / n) / std::pow(m2.value() / n, 1.5);
  return {g, std::sqrt(6.0 / n)};
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("linear_fit: need >= 2 paired points");
  const std::size_t n = x.size();
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw std::invalid_argument("linear_fit: x values are all equal");
  LinearFit f;
  f.n = n;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (n > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - (f.intercept + f.slope * x[i]);
      rss += r * r;
    }
    f.slope_se = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
    const boost::math::students_t dist(static_cast<double>(n - 2));
    const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
    f.ci_low = f.slope - t * f.slope_se;
    f.ci_high = f.slope + t * f.slope_se;
  } else {
    f.ci_low = f.ci_high = f.slope;
  }
  return f;
}

namespace {

double sign(double v) { return (v > 0.0) - (v < 0.0); }

double kendall_s(std::span<const double> xs) {
  double s = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) s += sign(xs[j] - xs[i]);
  return s;
}

}  // namespace

TrendTest mann_kendall(std::span<const double> xs) {
  TrendTest t;
  const std::size_t n = xs.size();
  if (n < 3) return t;
  t.s = kendall_s(xs);
  const double nn = static_cast<double>(n);
  const double var = nn * (nn - 1.0) * (2.0 * nn + 5.0) / 18.0;
  if (t.s > 0) t.z = (t.s - 1.0) / std::sqrt(var);
  else if (t.s < 0) t.z = (t.s + 1.0) / std::sqrt(var);
  if (n <= 8) {
    // Exact permutation distribution of S (no ties) by enumerating all orderings.
    std::vector<double> perm(n);
    std::iota(perm.begin(), perm.end(), 0.0);
    std::size_t total = 0, ge = 0, le = 0;
    do {
      const double s = kendall_s(perm);
      ++total;
      if (s >= t.s) ++ge;
      if (s <= t.s) ++le;
    } while (std::next_permutation(perm.begin(), perm.end()));
    t.p_increasing = static_cast<double>(ge) / static_cast<double>(total);
    t.p_two_sided = std::min(1.0, 2.0 * std::min(ge, le) / static_cast<double>(total));
  } else {
    const boost::math::normal nd;
    t.p_increasing = boost::math::cdf(boost::math::complement(nd, t.z));
    t.p_two_sided = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(nd, std::abs(t.z))));
  }
  return t;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KsResult r;
  r.statistic = d;
  const double ne = na * nb / (na + nb);
  const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
  // Kolmogorov distribution tail: Q(λ) = 2 Σ (-1)^{k-1} exp(-2 k² λ²)
  double q = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
    q += term;
    if (std::abs(term) < 1e-12) break;
  }
  r.p_value = lambda < 1e-3 ? 1.0 : std::clamp(q, 0.0, 1.0);
  return r;
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
  const SampleSummary sx = summarize(x), sy = summarize(y);
  CompensatedSum c;
  for (std::size_t i = 0; i < x.size(); ++i) c.add((x[i] - sx.mean) * (y[i] - sy.mean));
  return c.value() / static_cast<double>(x.size() - 1) / (sx.stddev * sy.stddev);
}

}  // namespace ltlab
