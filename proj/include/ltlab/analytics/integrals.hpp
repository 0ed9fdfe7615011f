#pragma once

#include <vector>

#include "ltlab/core/rng.hpp"

namespace ltlab::analytics {

struct BetaIdentity {
  double lhs = 0.0;  // quadrature
  double rhs = 0.0;  // t^{1+θ₁+θ₂} B(1+θ₁, 1+θ₂)
  double relative_difference = 0.0;
};

/// ∫_0^t (t−s)^{θ₁} s^{θ₂} ds by splitting at t/2 and a power-law substitution
/// on each half, against the closed form. Rejects θ ≤ −1 and t ≤ 0.
BetaIdentity beta_identity_check(double theta1, double theta2, double t);

struct SimplexCheck {
  double closed_form = 0.0;  // Beta-product form
  double gamma_form = 0.0;   // ∏Γ(1+θ_j) (U−u)^{n+Σθ} / Γ(n+1+Σθ)
  double mc_estimate = 0.0;
  double mc_std_error = 0.0;
  double z_score = 0.0;
};

/// ∫_{u ≤ t_1 < … < t_n ≤ U} ∏_j (t_j − t_{j−1})^{θ_j} dt with t_0 = u.
/// Monte Carlo uses sorted uniforms on [u, U] times the simplex volume.
SimplexCheck simplex_integral_check(const std::vector<double>& thetas, double u, double U,
                                    std::size_t mc_samples, RngStream& rng);

/// Closed form alone (log-Gamma evaluation of the Beta product).
double simplex_closed_form(const std::vector<double>& thetas, double u, double U);

struct GammaRatioRow {
  std::size_t n = 0;
  double constant = 0.0;  // (Γ(n+1)/Γ(βn))^{1/n} / n^{1−β}
};

struct GammaRatioReport {
  double beta = 0.5;
  std::vector<GammaRatioRow> rows;
  double sup = 0.0;
  bool tail_non_increasing = false;  // over the largest third of n
  bool bounded = false;
};

GammaRatioReport gamma_ratio_bound_check(std::vector<std::size_t> n_list, double beta);

}  // namespace ltlab::analytics
