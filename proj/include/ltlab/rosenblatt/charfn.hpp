#pragma once

#include <span>
#include <vector>

#include "ltlab/core/charfn.hpp"
#include "ltlab/rosenblatt/kernel.hpp"

namespace ltlab::rosenblatt {

struct EigenProduct {
  std::vector<double> lambdas;  // sorted by decreasing |λ|
  double value = 1.0;           // ∏ (1 + 4λ²)^{−1/4}
};

/// Eigenvalues of Σ_j ξ_j (A(t_j) − A(t_{j−1})) and the resulting bound on
/// |E exp(i Σ_j ξ_j ΔZ_j)|. `partition` holds t_0 < … < t_m.
EigenProduct rosenblatt_charfn_bound(const ChaosKernel& kernel, std::span<const double> partition,
                                     std::span<const double> xi);

/// ∏ (1 + 4λ²)^{−1/4}, accumulated in log space.
double eigen_product_value(std::span<const double> lambdas);

/// Eigenvalues of A(t_end). Increments over [s, s+u] have the law of u^H-scaled
/// copies (stationary increments and self-similarity), which the returned
/// provider uses for |E exp(iξ(Z_t − Z_s))|.
IncrementCharfn rosenblatt_increment_charfn(const ChaosKernel& kernel);

/// Single-increment decay check value(ξ, [0, Δ]) ≤ C |ξ|^{−k} Δ^{−Hk}. C keeps
/// the 2k largest eigenvalue terms of the full-horizon increment; the values
/// come from the discretized A(Δ).
struct RosenblattDecayCheck {
  double constant = 1.0;
  std::size_t points = 0;
  double max_excess = 0.0;
  bool holds = false;
};
RosenblattDecayCheck check_rosenblatt_decay(const ChaosKernel& kernel, std::span<const double> xi_values,
                                            std::span<const double> deltas, std::span<const int> ks);

}  // namespace ltlab::rosenblatt

namespace ltlab::rosenblatt {

/// Empirical |E exp(iξZ)| from samples of Z against the eigenvalue product of ξ·A.
struct CharfnComparison {
  double xi = 0.0;
  double empirical = 0.0;     // |mean exp(iξZ_j)|
  double std_error = 0.0;     // of the projection cos(ξZ_j − arg φ̂)
  double eigen_product = 0.0;
  double z_score = 0.0;       // (empirical − eigen_product) / std_error
};

/// `samples` are draws of the form ξᵀAξ − tr A for the matrix `a`.
std::vector<CharfnComparison> compare_empirical_charfn(const Eigen::MatrixXd& a, std::span<const double> samples,
                                                       std::span<const double> frequencies);

}  // namespace ltlab::rosenblatt
