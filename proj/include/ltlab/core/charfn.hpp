#pragma once

#include <functional>
#include <span>

namespace ltlab {

/// |E exp(i⟨ξ, X_t − X_s⟩)| for s < t and a d-vector ξ.
struct IncrementCharfn {
  int d = 1;
  std::function<double(double s, double t, std::span<const double> xi)> value;
};

}  // namespace ltlab
