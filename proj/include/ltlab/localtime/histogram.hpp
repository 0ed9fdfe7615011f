#pragma once

#include <functional>
#include <span>

#include "ltlab/localtime/box.hpp"

namespace ltlab::localtime {

/// Occupation density on the cells of `box`: time spent by the linearly
/// interpolated path in each cell during the window, divided by the cell
/// volume. Each step's time is split across the cells its segment crosses in
/// proportion to the segment length inside each cell.
LocalTimeField occupation_histogram(const SamplePath& path, const TimeWindow& window, const SpatialBox& box);

/// L̂ of the single cube of side eps centred at x (same attribution rule, O(steps)).
double occupation_at(const SamplePath& path, const TimeWindow& window, std::span<const double> x, double eps);

/// max_x L̂(x, window) over cells of width eps aligned to multiples of eps that
/// meet the path's range.
double sup_localtime(const SamplePath& path, const TimeWindow& window, double eps);

/// ∫_window g(X_s) ds along the interpolated path (3-point Gauss-Legendre per step).
double path_integral(const SamplePath& path, const TimeWindow& window,
                     const std::function<double(std::span<const double>)>& g);

/// |∫ g(X_s) ds − Σ_cells g(x_cell) L̂(cell) vol| / |∫ g(X_s) ds|. Throws
/// std::domain_error when the path integral vanishes.
double occupation_identity_check(const SamplePath& path, const LocalTimeField& field,
                                 const std::function<double(std::span<const double>)>& g);

/// Calls fn(k, λ0, λ1) for every step k overlapping the window; [λ0, λ1] ⊆ [0, 1]
/// is the part of the step inside the window.
void for_each_window_step(const SamplePath& path, const TimeWindow& window,
                          const std::function<void(std::size_t, double, double)>& fn);

void validate_window(const SamplePath& path, const TimeWindow& window);

}  // namespace ltlab::localtime
