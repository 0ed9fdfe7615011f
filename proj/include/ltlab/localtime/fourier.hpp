#pragma once

#include <span>
#include <string>
#include <vector>

#include "ltlab/localtime/box.hpp"

namespace ltlab::localtime {

struct FourierEstimate {
  double value = 0.0;
  std::vector<std::string> warnings;
};

/// Truncated Fourier inversion
///
///   L(x, [s,t]) ≈ (2π)^{−d} Re Σ_ξ δξ^d Σ_k w_k exp(i⟨ξ, x − X_{t_k}⟩),
///
/// with ξ on the midpoint grid of [−Ξ, Ξ]^d (spacing δξ, adjusted down so that
/// 2Ξ/δξ is an integer) and trapezoid weights w_k in time. The frequency sum
/// of each axis is evaluated in closed form as the Dirichlet-type kernel
/// δξ·sin(Ξy)/sin(δξ y/2); it is periodic in y with period 2π/δξ, so δξ must
/// be small against the distance from x to the path range.
FourierEstimate fourier_localtime(const SamplePath& path, const TimeWindow& window, std::span<const double> x,
                                  double cutoff, double freq_step);

/// δξ = min(Ξ/16, π / (2 max_s ‖x − X_s‖_∞)), keeping aliases out of the path range.
double default_freq_step(const SamplePath& path, const TimeWindow& window, std::span<const double> x,
                         double cutoff);

/// Fourier estimate at every cell centre of the box.
LocalTimeField fourier_field(const SamplePath& path, const TimeWindow& window, const SpatialBox& box,
                             double cutoff, double freq_step);

/// Midpoint-rule frequency sum for one axis: δξ Σ_j cos(ξ_j y), j = 0..J−1.
double dirichlet_sum(double y, double cutoff, std::size_t count);

}  // namespace ltlab::localtime
