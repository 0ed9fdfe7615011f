#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ltlab/core/process.hpp"

namespace ltlab::localtime {

/// Time interval [s, t].
struct TimeWindow {
  double s = 0.0;
  double t = 1.0;
  double length() const { return t - s; }
};

/// Uniform spatial grid over the box ∏_l [center_l − half_l, center_l + half_l].
struct SpatialBox {
  std::vector<double> center;
  std::vector<double> half_width;
  std::vector<std::size_t> bins;

  int dim() const { return static_cast<int>(center.size()); }
  double lower(int l) const { return center[l] - half_width[l]; }
  double upper(int l) const { return center[l] + half_width[l]; }
  double cell_width(int l) const { return 2.0 * half_width[l] / static_cast<double>(bins[l]); }
  double cell_volume() const;
  std::size_t n_cells() const;
  /// Cell index along each axis → flat index (axis 0 fastest).
  std::size_t flat_index(const std::vector<std::size_t>& idx) const;
  std::vector<double> cell_center(std::size_t flat) const;
  bool contains(std::span<const double> x) const;

  void validate() const;

  /// Box with cubic cells of width eps, aligned to multiples of eps, covering
  /// the range of the path over the window.
  static SpatialBox covering(const SamplePath& path, const TimeWindow& window, double eps);
};

enum class EstimatorKind { histogram, fourier };
std::string to_string(EstimatorKind k);

/// Estimated local time L̂(x, [s, t]) on the cells of a box.
struct LocalTimeField {
  SpatialBox box;
  TimeWindow window;
  std::vector<double> values;
  EstimatorKind estimator = EstimatorKind::histogram;
  double bin_width = 0.0;   // histogram: largest cell width
  double cutoff = 0.0;      // fourier: Ξ
  double freq_step = 0.0;   // fourier: δξ
  bool range_inside = true;  // false when the path leaves the box (mass check waived)
  std::vector<std::string> flags;

  /// Σ values · cell volume.
  double mass() const;
  double max_value() const;
  /// Value of the cell containing x (0 outside the box).
  double value_at(std::span<const double> x) const;
};

/// Default bin width c·Δ^α.
double default_bin_width(const TimeGrid& grid, double alpha, double factor = 2.0);

}  // namespace ltlab::localtime
