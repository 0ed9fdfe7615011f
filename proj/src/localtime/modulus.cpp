#include "ltlab/localtime/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "ltlab/core/stats.hpp"

namespace ltlab::localtime {
namespace {

std::size_t lag_steps(const SamplePath& path, double h) {
  const double m = h / path.grid().step();
  const double r = std::round(m);
  if (r < 1.0 || std::abs(m - r) > 1e-9 * std::max(1.0, m))
    throw std::invalid_argument("modulus_of_continuity: h must be a positive multiple of the grid step");
  if (static_cast<std::size_t>(r) > path.grid().n_steps())
    throw std::invalid_argument("modulus_of_continuity: h exceeds the path horizon");
  return static_cast<std::size_t>(r);
}

// Sliding-window max − min over windows of m+1 consecutive points.
double oscillation_1d(const SamplePath& path, std::size_t m) {
  const std::size_t n = path.size();
  std::deque<std::size_t> mx, mn;
  double best = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double v = path.value(k);
    while (!mx.empty() && path.value(mx.back()) <= v) mx.pop_back();
    while (!mn.empty() && path.value(mn.back()) >= v) mn.pop_back();
    mx.push_back(k);
    mn.push_back(k);
    while (mx.front() + m < k) mx.pop_front();
    while (mn.front() + m < k) mn.pop_front();
    best = std::max(best, path.value(mx.front()) - path.value(mn.front()));
  }
  return best;
}

double oscillation_nd(const SamplePath& path, std::size_t m) {
  const std::size_t n = path.size();
  const int d = path.dim();
  double best2 = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j <= std::min(n - 1, i + m); ++j) {
      double s = 0.0;
      for (int l = 0; l < d; ++l) {
        const double diff = path.value(j, l) - path.value(i, l);
        s += diff * diff;
      }
      best2 = std::max(best2, s);
    }
  return std::sqrt(best2);
}

}  // namespace

double max_oscillation(const SamplePath& path, double h) {
  const std::size_t m = lag_steps(path, h);
  return path.dim() == 1 ? oscillation_1d(path, m) : oscillation_nd(path, m);
}

ScalingReport modulus_of_continuity(std::span<const SamplePath> paths, const std::vector<double>& h_values,
                                    double alpha, double iota) {
  if (paths.empty()) throw std::invalid_argument("modulus_of_continuity: no paths");
  if (h_values.size() < 2) throw std::invalid_argument("modulus_of_continuity: need at least two lags");
  std::vector<double> hs = h_values;
  std::sort(hs.begin(), hs.end(), std::greater<>());

  ScalingReport rep;
  rep.statement = "modulus-of-continuity";
  rep.quantity = "max oscillation over lags h";
  rep.target_slope = alpha;
  std::vector<double> lx, ly, lyn, ratio_means;
  rep.ratio_floor = std::numeric_limits<double>::infinity();
  for (double h : hs) {
    LevelStat s;
    s.scale = h;
    const double logfac = (h < 1.0) ? std::pow(std::log(1.0 / h), iota) : 0.0;
    s.normalizer = std::pow(h, alpha) * logfac;
    std::vector<double> om, logs, ratios;
    for (const auto& p : paths) {
      const double w = max_oscillation(p, h);
      om.push_back(w);
      logs.push_back(std::log(w));
      if (s.normalizer > 0.0) ratios.push_back(w / s.normalizer);
    }
    const SampleSummary sum = summarize(om);
    s.mean = sum.mean;
    s.std_error = sum.std_error;
    s.samples = sum.n;
    s.mean_log = summarize(logs).mean;
    if (!ratios.empty()) {
      s.ratio_mean = summarize(ratios).mean;
      s.ratio_median = quantile(ratios, 0.5);
      s.ratio_q90 = quantile(ratios, 0.9);
      s.ratio_max = *std::max_element(ratios.begin(), ratios.end());
      s.ratio_min = *std::min_element(ratios.begin(), ratios.end());
      rep.replica_ratio_max = std::max(rep.replica_ratio_max, s.ratio_max);
      rep.ratio_floor = std::min(rep.ratio_floor, s.ratio_min);
      ratio_means.push_back(s.ratio_mean);
      lyn.push_back(s.mean_log - std::log(logfac));
    }
    lx.push_back(std::log(h));
    ly.push_back(s.mean_log);
    rep.levels.push_back(s);
  }
  rep.fit = linear_fit(lx, ly);
  if (lyn.size() == lx.size()) rep.normalized_fit = linear_fit(lx, lyn);
  if (ratio_means.size() >= 3) rep.trend_p_value = mann_kendall(ratio_means).p_increasing;
  if (!std::isfinite(rep.ratio_floor)) rep.ratio_floor = 0.0;
  rep.tolerance = 0.05;
  rep.pass = std::abs(rep.normalized_fit.slope - alpha) <= rep.tolerance && rep.trend_p_value >= 1e-3;
  return rep;
}

ScalingReport modulus_of_continuity(const SamplePath& path, const std::vector<double>& h_values, double alpha,
                                    double iota) {
  return modulus_of_continuity(std::span<const SamplePath>(&path, 1), h_values, alpha, iota);
}

}  // namespace ltlab::localtime
