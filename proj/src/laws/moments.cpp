#include "ltlab/laws/moments.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "ltlab/laws/path_source.hpp"
#include "ltlab/localtime/histogram.hpp"

namespace ltlab::laws {

double resolve_bin_width(const EstimatorSettings& s, const TimeGrid& grid, double alpha, double smallest_scale) {
  if (s.bin_width > 0.0) return s.bin_width;
  double eps = s.bin_factor * std::pow(grid.step(), alpha);
  if (s.resolution_clamp && smallest_scale > 0.0) eps = std::min(eps, 0.1 * std::pow(smallest_scale, alpha));
  return eps;
}

std::string to_string(LocationMode m) { return m == LocationMode::fixed ? "fixed" : "shifted"; }

LocationMode location_mode_from_string(const std::string& s) {
  if (s == "fixed") return LocationMode::fixed;
  if (s == "shifted") return LocationMode::shifted;
  throw std::invalid_argument("unknown location mode '" + s + "' (known: fixed, shifted)");
}

const MomentEstimate& MomentReport::estimate(int n, std::size_t scale_index) const {
  for (std::size_t i = 0; i < n_list.size(); ++i)
    if (n_list[i] == n) return estimates.at(i * scales.size() + scale_index);
  throw std::out_of_range("moment report: order not scanned");
}

namespace {

// Per replica, a vector of values; nullopt for failed (blown-up) replicas.
template <class Fn>
std::vector<std::optional<std::vector<double>>> run_replicas(std::size_t replicas, const RngStream& rng,
                                                             kernels::Execution exec, Fn&& fn) {
  std::vector<std::optional<std::vector<double>>> out(replicas);
  kernels::for_each_replica(replicas, exec, [&](std::size_t r) {
    RngStream s = rng.replica(static_cast<std::uint32_t>(r));
    try {
      out[r] = fn(s);
    } catch (const sde::BlowUpError&) {
      out[r].reset();
    }
  });
  return out;
}

void check_x(const std::vector<double>& x, int d) {
  if (static_cast<int>(x.size()) != d) throw std::invalid_argument("scan: x must have d components");
}

}  // namespace

MomentReport moment_scan(const ProcessSpec& spec, const TimeGrid& grid, const std::vector<double>& x,
                         const std::vector<int>& n_list, const std::vector<double>& lags, std::size_t replicas,
                         const RngStream& rng, LocationMode mode, double start, const EstimatorSettings& est,
                         kernels::Execution exec) {
  spec.validate();
  spec.require_local_time_regime();
  check_x(x, spec.d);
  if (n_list.empty() || lags.empty()) throw std::invalid_argument("moment_scan: empty order or lag list");
  if (replicas < 2) throw std::invalid_argument("moment_scan: need at least two replicas");
  for (double lag : lags)
    if (!(lag > 0.0) || start + lag > grid.t_end() * (1.0 + 1e-12) || start < grid.t_start())
      throw std::invalid_argument("moment_scan: lags must be positive and windows inside the grid");

  MomentReport rep;
  rep.statement = mode == LocationMode::fixed ? "local-time-moment-bound" : "shifted-local-time-moment-bound";
  rep.mode = to_string(mode);
  rep.x = x;
  rep.n_list = n_list;
  rep.scales = lags;
  rep.replicas = replicas;
  const double min_lag = *std::min_element(lags.begin(), lags.end());
  rep.bin_width = resolve_bin_width(est, grid, spec.alpha, min_lag);
  const double eps = rep.bin_width;
  const std::size_t a_index = grid.nearest_index(start);

  const PathSource source(spec, grid);
  const auto per = run_replicas(replicas, rng, exec, [&](RngStream& s) {
    const SamplePath path = source.draw(s);
    std::vector<double> at = x;
    if (mode == LocationMode::shifted)
      for (int l = 0; l < spec.d; ++l) at[l] += path.value(a_index, l);
    std::vector<double> vals;
    for (double lag : lags) vals.push_back(localtime::occupation_at(path, {start, start + lag}, at, eps));
    return vals;
  });

  std::vector<std::vector<double>> by_lag(lags.size());
  for (const auto& p : per) {
    if (!p) {
      ++rep.failures;
      continue;
    }
    for (std::size_t j = 0; j < lags.size(); ++j) by_lag[j].push_back((*p)[j]);
  }
  const double ad = spec.alpha * spec.d;
  rep.pass = true;
  for (int n : n_list) {
    std::vector<double> lx, ly;
    for (std::size_t j = 0; j < lags.size(); ++j) {
      std::vector<double> pw(by_lag[j].size());
      for (std::size_t i = 0; i < pw.size(); ++i) pw[i] = std::pow(std::abs(by_lag[j][i]), n);
      const SampleSummary sum = summarize(pw);
      MomentEstimate e;
      e.n = n;
      e.scale = lags[j];
      e.mean = sum.mean;
      e.std_error = sum.std_error;
      e.resolution_flag = eps > 0.1 * std::pow(lags[j], spec.alpha);
      if (e.resolution_flag && n == n_list.front()) {
        std::ostringstream os;
        os << "lag " << lags[j] << ": bin width " << eps << " exceeds 10% of lag^alpha";
        rep.flags.push_back(os.str());
      }
      rep.estimates.push_back(e);
      if (e.mean > 0.0) {
        lx.push_back(std::log(lags[j]));
        ly.push_back(std::log(e.mean));
      }
    }
    const double target = (1.0 - ad) * n;
    rep.target_slopes.push_back(target);
    if (lx.size() >= 2) {
      rep.fits.push_back(linear_fit(lx, ly));
      const bool ok = std::abs(rep.fits.back().slope - target) <= rep.tolerance * n;
      rep.pass_per_n.push_back(ok);
      rep.pass = rep.pass && ok;
    } else {
      rep.fits.push_back(LinearFit{});
      rep.pass_per_n.push_back(lags.size() < 2);
      if (lags.size() >= 2) rep.pass = false;
    }
  }
  if (rep.failures > 0) rep.flags.push_back(std::to_string(rep.failures) + " replicas blew up and were dropped");
  return rep;
}

MomentReport holder_increment_scan(const ProcessSpec& spec, const TimeGrid& grid, const std::vector<double>& x,
                                   const std::vector<double>& y_list, double gamma, double window_s,
                                   double window_t, std::size_t replicas, const RngStream& rng,
                                   const EstimatorSettings& est, kernels::Execution exec) {
  spec.validate();
  spec.require_local_time_regime();
  check_x(x, spec.d);
  const double ad = spec.alpha * spec.d;
  const double gamma_max = std::min(1.0, (1.0 - ad) / (2.0 * spec.alpha));
  if (!(gamma >= 0.0 && gamma < gamma_max)) {
    std::ostringstream os;
    os << "holder_increment_scan: need 0 <= gamma < " << gamma_max;
    throw std::invalid_argument(os.str());
  }
  if (y_list.empty()) throw std::invalid_argument("holder_increment_scan: empty offset list");
  if (replicas < 2) throw std::invalid_argument("holder_increment_scan: need at least two replicas");

  MomentReport rep;
  rep.statement = "local-time-spatial-increment-bound";
  rep.mode = "fixed";
  rep.x = x;
  rep.n_list = {1};
  rep.scales = y_list;
  rep.replicas = replicas;
  double y_min = 0.0;
  for (double y : y_list)
    if (y > 0.0) y_min = (y_min == 0.0) ? y : std::min(y_min, y);
  EstimatorSettings s = est;
  if (s.bin_width <= 0.0 && s.resolution_clamp && y_min > 0.0) {
    s.bin_width = std::min(s.bin_factor * std::pow(grid.step(), spec.alpha), 0.5 * y_min);
  }
  rep.bin_width = resolve_bin_width(s, grid, spec.alpha, 0.0);
  const double eps = rep.bin_width;
  const localtime::TimeWindow window{window_s, window_t};

  const PathSource source(spec, grid);
  const auto per = run_replicas(replicas, rng, exec, [&](RngStream& st) {
    const SamplePath path = source.draw(st);
    const double base = localtime::occupation_at(path, window, x, eps);
    std::vector<double> vals;
    for (double y : y_list) {
      if (y == 0.0) {
        vals.push_back(0.0);
        continue;
      }
      std::vector<double> xy = x;
      xy[0] += y;
      vals.push_back(std::abs(localtime::occupation_at(path, window, xy, eps) - base));
    }
    return vals;
  });

  std::vector<std::vector<double>> by_y(y_list.size());
  for (const auto& p : per) {
    if (!p) {
      ++rep.failures;
      continue;
    }
    for (std::size_t j = 0; j < y_list.size(); ++j) by_y[j].push_back((*p)[j]);
  }
  std::vector<double> lx, ly;
  for (std::size_t j = 0; j < y_list.size(); ++j) {
    const SampleSummary sum = summarize(by_y[j]);
    MomentEstimate e;
    e.n = 1;
    e.scale = y_list[j];
    e.mean = sum.mean;
    e.std_error = sum.std_error;
    e.resolution_flag = y_list[j] > 0.0 && y_list[j] < 2.0 * eps;
    if (e.resolution_flag) {
      std::ostringstream os;
      os << "offset " << y_list[j] << " below twice the bin width " << eps << "; excluded from the fit";
      rep.flags.push_back(os.str());
    }
    rep.estimates.push_back(e);
    if (y_list[j] > 0.0 && !e.resolution_flag && e.mean > 0.0) {
      lx.push_back(std::log(y_list[j]));
      ly.push_back(std::log(e.mean));
    }
  }
  rep.target_slopes.push_back(gamma);
  if (lx.size() >= 2) {
    rep.fits.push_back(linear_fit(lx, ly));
    rep.pass = rep.fits.back().slope >= gamma - rep.tolerance;
  } else {
    rep.fits.push_back(LinearFit{});
    rep.pass = false;
    rep.flags.push_back("fewer than two resolvable offsets");
  }
  rep.pass_per_n.push_back(rep.pass);
  return rep;
}

}  // namespace ltlab::laws
