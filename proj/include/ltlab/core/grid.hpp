#pragma once

#include <cstddef>
#include <vector>

namespace ltlab {

/// Uniform time grid on [t_start, t_end] with n_steps intervals.
///
/// Grid points are computed as t_start + k * step() (one multiplication, no
/// accumulated additions); the last point is pinned to t_end exactly.
class TimeGrid {
public:
  TimeGrid(double t_start, double t_end, std::size_t n_steps);

  double t_start() const { return t_start_; }
  double t_end() const { return t_end_; }
  std::size_t n_steps() const { return n_steps_; }
  std::size_t n_points() const { return n_steps_ + 1; }
  double step() const { return step_; }
  double span() const { return t_end_ - t_start_; }

  double point(std::size_t k) const;
  std::vector<double> points() const;

  /// Index of the grid point closest to t (clamped to the grid).
  std::size_t nearest_index(double t) const;

  /// Dyadic restriction: every `stride`-th point. n_steps must be divisible.
  TimeGrid coarsened(std::size_t stride) const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

private:
  double t_start_;
  double t_end_;
  std::size_t n_steps_;
  double step_;
};

TimeGrid make_grid(double t_start, double t_end, std::size_t n_steps);

}  // namespace ltlab
