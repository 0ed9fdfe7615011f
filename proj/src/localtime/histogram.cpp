#include "ltlab/localtime/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ltlab/core/numeric.hpp"

namespace ltlab::localtime {

void validate_window(const SamplePath& path, const TimeWindow& window) {
  const auto& g = path.grid();
  if (!(window.t > window.s)) throw std::invalid_argument("local time: empty window");
  const double tol = 1e-12 * std::max(1.0, g.t_end());
  if (window.s < g.t_start() - tol || window.t > g.t_end() + tol)
    throw std::invalid_argument("local time: window outside the path's time grid");
}

void for_each_window_step(const SamplePath& path, const TimeWindow& window,
                          const std::function<void(std::size_t, double, double)>& fn) {
  const auto& g = path.grid();
  const double dt = g.step();
  const double s = std::max(window.s, g.t_start());
  const double t = std::min(window.t, g.t_end());
  auto k0 = static_cast<std::size_t>(std::max(0.0, std::floor((s - g.t_start()) / dt)));
  auto k1 = static_cast<std::size_t>(std::ceil((t - g.t_start()) / dt));
  k0 = std::min(k0, g.n_steps() - 1);
  k1 = std::min(k1, g.n_steps());
  for (std::size_t k = k0; k < k1; ++k) {
    const double a = g.point(k), b = g.point(k + 1);
    const double l0 = std::max(0.0, (s - a) / (b - a));
    const double l1 = std::min(1.0, (t - a) / (b - a));
    if (l1 > l0) fn(k, l0, l1);
  }
}

LocalTimeField occupation_histogram(const SamplePath& path, const TimeWindow& window, const SpatialBox& box) {
  box.validate();
  validate_window(path, window);
  const int d = path.dim();
  if (box.dim() != d) throw std::invalid_argument("occupation_histogram: box dimension differs from path");

  LocalTimeField field;
  field.box = box;
  field.window = window;
  field.estimator = EstimatorKind::histogram;
  for (int l = 0; l < d; ++l) field.bin_width = std::max(field.bin_width, box.cell_width(l));
  std::vector<CompensatedSum> time(box.n_cells());
  const double dt = path.grid().step();
  bool outside = false;

  std::vector<double> lo(d), w(d), ua(d), ub(d);
  for (int l = 0; l < d; ++l) {
    lo[l] = box.lower(l);
    w[l] = box.cell_width(l);
  }
  std::vector<double> cuts;
  std::vector<std::size_t> idx(d);

  // Adds time to the cell containing the point at parameter lam (cell coordinates ua + lam (ub − ua)).
  auto deposit = [&](double lam, double amount) {
    std::size_t flat = 0, stride = 1;
    for (int l = 0; l < d; ++l) {
      const double u = ua[l] + lam * (ub[l] - ua[l]);
      const double f = std::floor(u);
      if (f < 0.0 || f >= static_cast<double>(box.bins[l])) {
        // Points exactly on the upper face belong to the last cell.
        if (u == static_cast<double>(box.bins[l])) {
          flat += (box.bins[l] - 1) * stride;
          stride *= box.bins[l];
          continue;
        }
        outside = true;
        return;
      }
      flat += static_cast<std::size_t>(f) * stride;
      stride *= box.bins[l];
    }
    time[flat].add(amount);
  };

  for_each_window_step(path, window, [&](std::size_t k, double l0, double l1) {
    for (int l = 0; l < d; ++l) {
      ua[l] = (path.value(k, l) - lo[l]) / w[l];
      ub[l] = (path.value(k + 1, l) - lo[l]) / w[l];
    }
    cuts.clear();
    cuts.push_back(l0);
    for (int l = 0; l < d; ++l) {
      const double du = ub[l] - ua[l];
      if (du == 0.0) continue;
      const double u0 = ua[l] + l0 * du, u1 = ua[l] + l1 * du;
      const double from = std::min(u0, u1), to = std::max(u0, u1);
      for (double j = std::floor(from) + 1.0; j < to; j += 1.0) {
        const double lam = (j - ua[l]) / du;
        if (lam > l0 && lam < l1) cuts.push_back(lam);
      }
    }
    cuts.push_back(l1);
    if (cuts.size() > 2) std::sort(cuts.begin() + 1, cuts.end() - 1);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double len = cuts[i + 1] - cuts[i];
      if (len > 0.0) deposit(0.5 * (cuts[i] + cuts[i + 1]), len * dt);
    }
  });

  const double vol = box.cell_volume();
  field.values.resize(time.size());
  for (std::size_t c = 0; c < time.size(); ++c) field.values[c] = time[c].value() / vol;
  field.range_inside = !outside;
  if (outside) field.flags.push_back("path leaves the box; mass conservation waived");
  return field;
}

double occupation_at(const SamplePath& path, const TimeWindow& window, std::span<const double> x, double eps) {
  validate_window(path, window);
  const int d = path.dim();
  if (static_cast<int>(x.size()) != d) throw std::invalid_argument("occupation_at: x has the wrong dimension");
  if (!(eps > 0.0)) throw std::invalid_argument("occupation_at: eps must be positive");
  const double dt = path.grid().step();
  const double half = 0.5 * eps;
  CompensatedSum acc;
  for_each_window_step(path, window, [&](std::size_t k, double l0, double l1) {
    double a = l0, b = l1;
    for (int l = 0; l < d && a < b; ++l) {
      const double p = path.value(k, l) - x[l];
      const double q = path.value(k + 1, l) - x[l];
      const double dq = q - p;
      if (dq == 0.0) {
        if (p < -half || p >= half) return;
        continue;
      }
      double e0 = (-half - p) / dq, e1 = (half - p) / dq;
      if (e0 > e1) std::swap(e0, e1);
      a = std::max(a, e0);
      b = std::min(b, e1);
    }
    if (b > a) acc.add((b - a) * dt);
  });
  return acc.value() / std::pow(eps, d);
}

double sup_localtime(const SamplePath& path, const TimeWindow& window, double eps) {
  const SpatialBox box = SpatialBox::covering(path, window, eps);
  return occupation_histogram(path, window, box).max_value();
}

double path_integral(const SamplePath& path, const TimeWindow& window,
                     const std::function<double(std::span<const double>)>& g) {
  validate_window(path, window);
  const int d = path.dim();
  const double dt = path.grid().step();
  const QuadratureRule& gl = gauss_legendre(3);
  std::vector<double> x(d);
  CompensatedSum acc;
  for_each_window_step(path, window, [&](std::size_t k, double l0, double l1) {
    const double half = 0.5 * (l1 - l0);
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      const double lam = l0 + half * (gl.nodes[q] + 1.0);
      for (int l = 0; l < d; ++l) x[l] = path.value(k, l) + lam * (path.value(k + 1, l) - path.value(k, l));
      acc.add(gl.weights[q] * half * dt * g(x));
    }
  });
  return acc.value();
}

double occupation_identity_check(const SamplePath& path, const LocalTimeField& field,
                                 const std::function<double(std::span<const double>)>& g) {
  const double lhs = path_integral(path, field.window, g);
  if (lhs == 0.0) throw std::domain_error("occupation_identity_check: path integral of g is zero");
  const double vol = field.box.cell_volume();
  CompensatedSum rhs;
  for (std::size_t c = 0; c < field.values.size(); ++c) {
    if (field.values[c] == 0.0) continue;
    rhs.add(g(field.box.cell_center(c)) * field.values[c] * vol);
  }
  return std::abs(lhs - rhs.value()) / std::abs(lhs);
}

}  // namespace ltlab::localtime
