#include "ltlab/core/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace ltlab {

TimeGrid::TimeGrid(double t_start, double t_end, std::size_t n_steps)
    : t_start_(t_start), t_end_(t_end), n_steps_(n_steps) {
  if (!(t_start >= 0.0) || !std::isfinite(t_end))
    throw std::invalid_argument("time grid: t_start must be >= 0 and t_end finite");
  if (!(t_end > t_start))
    throw std::invalid_argument("time grid: t_end must exceed t_start");
  if (n_steps == 0)
    throw std::invalid_argument("time grid: n_steps must be >= 1");
  step_ = (t_end - t_start) / static_cast<double>(n_steps);
}

double TimeGrid::point(std::size_t k) const {
  if (k > n_steps_) throw std::out_of_range("time grid: point index out of range");
  if (k == n_steps_) return t_end_;
  return t_start_ + static_cast<double>(k) * step_;
}

std::vector<double> TimeGrid::points() const {
  std::vector<double> out(n_points());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = point(k);
  return out;
}

std::size_t TimeGrid::nearest_index(double t) const {
  if (t <= t_start_) return 0;
  if (t >= t_end_) return n_steps_;
  auto k = static_cast<std::size_t>(std::llround((t - t_start_) / step_));
  return k > n_steps_ ? n_steps_ : k;
}

TimeGrid TimeGrid::coarsened(std::size_t stride) const {
  if (stride == 0 || n_steps_ % stride != 0)
    throw std::invalid_argument("time grid: stride must divide n_steps");
  return TimeGrid(t_start_, t_end_, n_steps_ / stride);
}

TimeGrid make_grid(double t_start, double t_end, std::size_t n_steps) {
  return TimeGrid(t_start, t_end, n_steps);
}

}  // namespace ltlab
