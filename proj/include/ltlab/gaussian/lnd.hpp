#pragma once

#include <string>
#include <vector>

#include "ltlab/core/rng.hpp"
#include "ltlab/gaussian/covariance.hpp"

namespace ltlab::gaussian {

/// Smallest observed ratio Var(Σ_k ⟨ξ_k, ΔZ_k⟩) / Σ_k Σ_l ξ_{k,l}² E(ΔZ^l_k)².
struct LndProbe {
  std::string family;              // "random", "uniform-alternating", "dyadic-ones", "worst-direction", ...
  double ratio = 1.0;
  std::vector<double> partition;   // t_0 = 0 < t_1 < … < t_m
  std::vector<double> xi;          // m × d, row-major
};

struct LndReport {
  int d = 1;
  int m_max = 1;
  std::size_t trials = 0;
  double horizon = 1.0;
  double min_ratio = 1.0;
  LndProbe worst_case;
  double min_random = 1.0;
  double min_adversarial = 1.0;
  /// Exact infimum over ξ for the probed partitions (smallest generalized
  /// eigenvalue of S against diag S).
  double min_worst_direction = 1.0;
};

/// LND ratio of one (partition, ξ) pair, evaluated exactly from the covariance.
double lnd_ratio(const CovarianceSpec& cov, int d, std::span<const double> partition, std::span<const double> xi);

/// Random partitions of [0, horizon] (sorted uniforms, m uniform in 1..m_max) with
/// standard normal ξ, plus a deterministic adversarial family of dyadic and
/// geometric partitions. Throws NotPsdError when an increment covariance is
/// not positive semidefinite.
LndReport check_lnd(const CovarianceSpec& cov, int d, int m_max, std::size_t trials, RngStream& rng,
                    double horizon = 1.0);

}  // namespace ltlab::gaussian
