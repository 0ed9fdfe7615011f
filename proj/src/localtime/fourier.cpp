#include "ltlab/localtime/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ltlab/core/numeric.hpp"
#include "ltlab/localtime/histogram.hpp"

namespace ltlab::localtime {

double dirichlet_sum(double y, double cutoff, std::size_t count) {
  const double step = 2.0 * cutoff / static_cast<double>(count);
  const double den = std::sin(0.5 * step * y);
  if (std::abs(den) < 1e-12) {
    // y = 2πm/δξ: every term is cos(πm(2j+1−J)) = (−1)^{m(J+1)}.
    const double m = std::round(step * y / (2.0 * std::numbers::pi));
    const long long sign_exp = static_cast<long long>(m) * static_cast<long long>(count + 1);
    return step * static_cast<double>(count) * ((sign_exp % 2 == 0) ? 1.0 : -1.0);
  }
  return step * std::sin(cutoff * y) / den;
}

namespace {

// Trapezoid nodes of the window on the path grid: (weight, interpolated point index data).
template <class Fn>
void trapezoid(const SamplePath& path, const TimeWindow& window, Fn&& fn) {
  const int d = path.dim();
  const double dt = path.grid().step();
  std::vector<double> xa(d), xb(d);
  for_each_window_step(path, window, [&](std::size_t k, double l0, double l1) {
    for (int l = 0; l < d; ++l) {
      const double p = path.value(k, l), q = path.value(k + 1, l);
      xa[l] = p + l0 * (q - p);
      xb[l] = p + l1 * (q - p);
    }
    const double w = 0.5 * (l1 - l0) * dt;
    fn(w, xa);
    fn(w, xb);
  });
}

}  // namespace

FourierEstimate fourier_localtime(const SamplePath& path, const TimeWindow& window, std::span<const double> x,
                                  double cutoff, double freq_step) {
  if (!(cutoff > 0.0)) throw std::invalid_argument("fourier_localtime: cutoff must be positive");
  if (!(freq_step > 0.0) || freq_step > cutoff / 16.0 * (1.0 + 1e-12))
    throw std::invalid_argument("fourier_localtime: need 0 < freq_step <= cutoff/16");
  validate_window(path, window);
  const int d = path.dim();
  if (static_cast<int>(x.size()) != d) throw std::invalid_argument("fourier_localtime: x has the wrong dimension");

  FourierEstimate out;
  const double alpha = path.spec().alpha;
  const double resolution = cutoff * std::pow(path.grid().step(), alpha);
  if (resolution > 1.0) {
    std::ostringstream os;
    os << "cutoff*step^alpha = " << resolution << " > 1: frequencies beyond the path resolution";
    out.warnings.push_back(os.str());
  }
  const auto count = static_cast<std::size_t>(std::ceil(2.0 * cutoff / freq_step - 1e-9));
  CompensatedSum acc;
  trapezoid(path, window, [&](double w, const std::vector<double>& xs) {
    double prod = 1.0;
    for (int l = 0; l < d; ++l) prod *= dirichlet_sum(x[l] - xs[l], cutoff, count);
    acc.add(w * prod);
  });
  out.value = acc.value() / std::pow(2.0 * std::numbers::pi, d);
  return out;
}

double default_freq_step(const SamplePath& path, const TimeWindow& window, std::span<const double> x,
                         double cutoff) {
  double reach = 0.0;
  trapezoid(path, window, [&](double, const std::vector<double>& xs) {
    for (std::size_t l = 0; l < xs.size(); ++l) reach = std::max(reach, std::abs(x[l] - xs[l]));
  });
  double step = cutoff / 16.0;
  if (reach > 0.0) step = std::min(step, std::numbers::pi / (2.0 * reach));
  return step;
}

LocalTimeField fourier_field(const SamplePath& path, const TimeWindow& window, const SpatialBox& box,
                             double cutoff, double freq_step) {
  box.validate();
  LocalTimeField field;
  field.box = box;
  field.window = window;
  field.estimator = EstimatorKind::fourier;
  field.cutoff = cutoff;
  field.freq_step = freq_step;
  field.values.resize(box.n_cells());
  for (std::size_t c = 0; c < box.n_cells(); ++c) {
    const std::vector<double> x = box.cell_center(c);
    FourierEstimate e = fourier_localtime(path, window, x, cutoff, freq_step);
    field.values[c] = e.value;
    if (c == 0) field.flags = std::move(e.warnings);
  }
  return field;
}

}  // namespace ltlab::localtime
