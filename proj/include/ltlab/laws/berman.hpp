#pragma once

#include <string>
#include <vector>

#include "ltlab/core/charfn.hpp"

namespace ltlab::laws {

enum class BermanVerdict { converges, diverges, inconclusive };
std::string to_string(BermanVerdict v);

struct BermanReport {
  std::string statement = "berman-integrability";
  int d = 1;
  double alpha = 0.5;
  double horizon = 1.0;
  std::vector<double> cutoffs;         // Ξ_0 = 1, Ξ_k = 2^k
  std::vector<double> shells;          // J_0 over [−1,1]^d, J_k over Ξ_{k−1} < ‖ξ‖_∞ ≤ Ξ_k
  std::vector<double> partial_sums;
  std::vector<double> ratios;          // J_k / J_{k−1}, k ≥ 2
  double tail_ratio = 0.0;             // mean of the last three ratios
  double predicted_ratio = 0.0;        // 2^{d − 1/α} for self-similar increments
  double extrapolated = 0.0;           // S_K + J_K ρ/(1−ρ) when converging
  BermanVerdict verdict = BermanVerdict::inconclusive;
};

/// ∫_{‖ξ‖_∞ ≤ Ξ} ∫_0^T ∫_0^T |E exp(i⟨ξ, X_t − X_s⟩)| ds dt dξ over the ladder
/// Ξ_k = 2^k, k ≤ levels. Time: (s, u = t − s) with geometric u-panels
/// towards 0 and Gauss-Legendre nodes; frequency: each sup-norm shell split
/// into 3^d − 1 boxes with tensor Gauss-Legendre nodes. Verdict from the tail
/// ratio: < 0.9 converges, > 1.1 diverges, inconclusive in between.
BermanReport berman_criterion(const IncrementCharfn& charfn, double alpha, double horizon, int levels = 12,
                              std::size_t xi_nodes = 12, std::size_t u_panels = 60);

}  // namespace ltlab::laws
