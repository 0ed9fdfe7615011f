#include "ltlab/laws/tails.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ltlab/laws/path_source.hpp"
#include "ltlab/localtime/histogram.hpp"

namespace ltlab::laws {

TailReport analyze_tail(std::vector<double> samples, double exponent, double scale, std::vector<double> u_grid,
                        double u_fit_min) {
  TailReport rep;
  rep.exponent = exponent;
  rep.scale = scale;
  rep.replicas = samples.size();
  const double n = static_cast<double>(samples.size());
  std::sort(samples.begin(), samples.end());

  auto count_at_least = [&](double thr) {
    return static_cast<std::size_t>(samples.end() - std::lower_bound(samples.begin(), samples.end(), thr));
  };
  if (u_grid.empty()) {
    if (samples.size() < kMinExceedances) throw std::invalid_argument("tail_probe: too few replicas");
    const double v = samples[samples.size() - kMinExceedances] / scale;
    const double u_max = std::pow(std::max(v, 0.0), 1.0 / exponent);
    for (int i = 0; i <= 16; ++i) u_grid.push_back(u_max * i / 16.0);
  }
  std::sort(u_grid.begin(), u_grid.end());
  for (double u : u_grid) {
    TailLevel lv;
    lv.u = u;
    lv.threshold = scale * std::pow(u, exponent);
    lv.exceedances = (u == 0.0) ? samples.size() : count_at_least(lv.threshold);
    if (lv.exceedances < kMinExceedances) {
      ++rep.truncated;
      continue;
    }
    lv.probability = static_cast<double>(lv.exceedances) / n;
    lv.log_probability = std::log(lv.probability);
    lv.se_log = std::sqrt((1.0 - lv.probability) / (n * lv.probability));
    rep.levels.push_back(lv);
  }
  if (rep.truncated > 0) {
    std::ostringstream os;
    os << rep.truncated << " levels with fewer than " << kMinExceedances << " exceedances truncated";
    rep.flags.push_back(os.str());
  }

  std::size_t qualifying = 0;
  for (const auto& lv : rep.levels)
    if (lv.u >= u_fit_min && lv.u > 0.0) ++qualifying;
  std::vector<double> xs, ys;
  for (auto& lv : rep.levels) {
    lv.in_fit = lv.u > 0.0 && (qualifying >= 3 ? lv.u >= u_fit_min : true);
    if (lv.in_fit) {
      xs.push_back(lv.u);
      ys.push_back(lv.log_probability);
    }
  }
  if (xs.size() < 3) {
    rep.flags.push_back("fewer than three levels available for the decay fit");
    return rep;
  }
  rep.fit = linear_fit(xs, ys);
  rep.rate = -rep.fit.slope;
  rep.rate_ci_low = -rep.fit.ci_high;
  rep.rate_ci_high = -rep.fit.ci_low;

  rep.decreasing = rep.levels.back().probability < rep.levels.front().probability;
  for (std::size_t i = 1; i < rep.levels.size(); ++i)
    if (rep.levels[i].probability > rep.levels[i - 1].probability) rep.decreasing = false;
  rep.convex = true;
  for (std::size_t i = 1; i + 1 < rep.levels.size(); ++i) {
    const auto &p = rep.levels[i - 1], &c = rep.levels[i], &q = rep.levels[i + 1];
    const double h1 = c.u - p.u, h2 = q.u - c.u;
    // Second divided difference scaled to unit spacing.
    const double second = 2.0 * ((q.log_probability - c.log_probability) / h2 -
                                 (c.log_probability - p.log_probability) / h1) / (h1 + h2) * h1 * h2;
    const double se = std::sqrt(p.se_log * p.se_log + 4.0 * c.se_log * c.se_log + q.se_log * q.se_log);
    if (second < -3.0 * se) rep.convex = false;
  }
  rep.pass = rep.decreasing && rep.convex && rep.rate > 0.0 && rep.rate_ci_low > 0.0;
  return rep;
}

TailReport tail_probe(const ProcessSpec& spec, const TimeGrid& grid, double a, double b, LocationMode mode,
                      const std::vector<double>& x, std::vector<double> u_grid, std::size_t replicas,
                      const RngStream& rng, double u_fit_min, const EstimatorSettings& est,
                      kernels::Execution exec) {
  spec.validate();
  spec.require_local_time_regime();
  if (static_cast<int>(x.size()) != spec.d) throw std::invalid_argument("tail_probe: x must have d components");
  if (!(b > a) || a < grid.t_start() || b > grid.t_end() * (1.0 + 1e-12))
    throw std::invalid_argument("tail_probe: interval must lie inside the grid");
  if (replicas < kMinExceedances) throw std::invalid_argument("tail_probe: too few replicas");
  const double len = b - a;
  const double eps = resolve_bin_width(est, grid, spec.alpha, len);
  const std::size_t a_index = grid.nearest_index(a);
  const PathSource source(spec, grid);
  std::vector<double> samples(replicas, 0.0);
  std::vector<char> ok(replicas, 1);
  kernels::for_each_replica(replicas, exec, [&](std::size_t r) {
    RngStream s = rng.replica(static_cast<std::uint32_t>(r));
    try {
      const SamplePath path = source.draw(s);
      std::vector<double> at = x;
      if (mode == LocationMode::shifted)
        for (int l = 0; l < spec.d; ++l) at[l] += path.value(a_index, l);
      samples[r] = localtime::occupation_at(path, {a, b}, at, eps);
    } catch (const sde::BlowUpError&) {
      ok[r] = 0;
    }
  });
  std::vector<double> kept;
  for (std::size_t r = 0; r < replicas; ++r)
    if (ok[r]) kept.push_back(samples[r]);
  const std::size_t dropped = replicas - kept.size();
  const double exponent = spec.alpha * (spec.d + spec.theta);
  const double scale = std::pow(len, 1.0 - spec.alpha * spec.d);
  TailReport rep = analyze_tail(std::move(kept), exponent, scale, std::move(u_grid), u_fit_min);
  rep.a = a;
  rep.b = b;
  rep.mode = to_string(mode);
  rep.x = x;
  rep.bin_width = eps;
  rep.replicas = replicas;
  if (dropped > 0) rep.flags.push_back(std::to_string(dropped) + " replicas blew up");
  return rep;
}

}  // namespace ltlab::laws
