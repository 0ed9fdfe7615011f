#pragma once

#include <span>
#include <vector>

#include "ltlab/core/charfn.hpp"
#include "ltlab/gaussian/covariance.hpp"

namespace ltlab::gaussian {

/// |E exp(i Σ_j ⟨ξ_j, Z_{t_j} − Z_{t_{j−1}}⟩)| = exp(−½ Var(Σ_j ⟨ξ_j, ΔZ_j⟩)).
/// `partition` holds t_0 < … < t_m, `xi` is m × d row-major.
double gaussian_charfn(const CovarianceSpec& cov, int d, std::span<const double> partition,
                       std::span<const double> xi);

/// Pointwise check of charfn(ξ, Δ) ≤ C |ξ|^{−k} Δ^{−Hk} for single increments.
struct DecayCheck {
  std::vector<int> ks;
  double constant = 1.0;
  std::size_t points = 0;
  double max_excess = 0.0;  // max over the grid of value / bound
  bool holds = false;
};

/// Constant from e^{−x} ≤ (p/e)^p x^{−p} with x = ½|ξ|²σ² and σ² ≥ C₋ Δ^{2H}:
/// C = max(1, max_k (k/e)^{k/2} C₋^{−k/2}).
double gaussian_decay_constant(const CovarianceSpec& cov, std::span<const int> ks);

DecayCheck check_gaussian_decay(const CovarianceSpec& cov, std::span<const double> xi_values,
                                std::span<const double> deltas, std::span<const int> ks, double s0 = 0.0);

/// Increment characteristic function of d independent components.
IncrementCharfn gaussian_increment_charfn(const CovarianceSpec& cov, int d);

}  // namespace ltlab::gaussian
