#include "ltlab/localtime/box.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ltlab/core/numeric.hpp"

namespace ltlab::localtime {

double SpatialBox::cell_volume() const {
  double v = 1.0;
  for (int l = 0; l < dim(); ++l) v *= cell_width(l);
  return v;
}

std::size_t SpatialBox::n_cells() const {
  std::size_t n = 1;
  for (std::size_t b : bins) n *= b;
  return n;
}

std::size_t SpatialBox::flat_index(const std::vector<std::size_t>& idx) const {
  std::size_t flat = 0, stride = 1;
  for (int l = 0; l < dim(); ++l) {
    flat += idx[l] * stride;
    stride *= bins[l];
  }
  return flat;
}

std::vector<double> SpatialBox::cell_center(std::size_t flat) const {
  std::vector<double> c(static_cast<std::size_t>(dim()));
  for (int l = 0; l < dim(); ++l) {
    const std::size_t i = flat % bins[l];
    flat /= bins[l];
    c[l] = lower(l) + (static_cast<double>(i) + 0.5) * cell_width(l);
  }
  return c;
}

bool SpatialBox::contains(std::span<const double> x) const {
  for (int l = 0; l < dim(); ++l)
    if (x[l] < lower(l) || x[l] > upper(l)) return false;
  return true;
}

void SpatialBox::validate() const {
  if (center.empty()) throw std::invalid_argument("box: dimension must be >= 1");
  if (half_width.size() != center.size() || bins.size() != center.size())
    throw std::invalid_argument("box: center, half_width and bins must have the same length");
  for (int l = 0; l < dim(); ++l) {
    if (bins[l] == 0) throw std::invalid_argument("box: bins must be positive");
    if (!(half_width[l] > 0.0)) throw std::invalid_argument("box: half widths must be positive");
  }
}

SpatialBox SpatialBox::covering(const SamplePath& path, const TimeWindow& window, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("box: bin width must be positive");
  const int d = path.dim();
  const auto& g = path.grid();
  const std::size_t k0 = static_cast<std::size_t>(std::floor((window.s - g.t_start()) / g.step()));
  const std::size_t k1 = std::min(g.n_steps(), static_cast<std::size_t>(std::ceil((window.t - g.t_start()) / g.step())));
  SpatialBox box;
  for (int l = 0; l < d; ++l) {
    double lo = path.value(k0, l), hi = lo;
    for (std::size_t k = k0; k <= k1; ++k) {
      lo = std::min(lo, path.value(k, l));
      hi = std::max(hi, path.value(k, l));
    }
    const double a = std::floor(lo / eps) * eps;
    double b = (std::floor(hi / eps) + 1.0) * eps;
    const auto n = static_cast<std::size_t>(std::llround((b - a) / eps));
    b = a + static_cast<double>(n) * eps;
    box.center.push_back(0.5 * (a + b));
    box.half_width.push_back(0.5 * (b - a));
    box.bins.push_back(n);
  }
  return box;
}

std::string to_string(EstimatorKind k) { return k == EstimatorKind::histogram ? "histogram" : "fourier"; }

double LocalTimeField::mass() const {
  CompensatedSum acc;
  for (double v : values) acc.add(v);
  return acc.value() * box.cell_volume();
}

double LocalTimeField::max_value() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

double LocalTimeField::value_at(std::span<const double> x) const {
  std::size_t flat = 0, stride = 1;
  for (int l = 0; l < box.dim(); ++l) {
    const double u = (x[l] - box.lower(l)) / box.cell_width(l);
    if (u < 0.0 || u > static_cast<double>(box.bins[l])) return 0.0;
    const auto i = std::min(box.bins[l] - 1, static_cast<std::size_t>(u));
    flat += i * stride;
    stride *= box.bins[l];
  }
  return values[flat];
}

double default_bin_width(const TimeGrid& grid, double alpha, double factor) {
  return factor * std::pow(grid.step(), alpha);
}

}  // namespace ltlab::localtime
