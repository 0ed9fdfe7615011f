#pragma once

#include <functional>
#include <vector>

#include "ltlab/core/report.hpp"
#include "ltlab/core/rng.hpp"
#include "ltlab/kernels/parallel.hpp"
#include "ltlab/sde/solver.hpp"

namespace ltlab::sde {

/// Pathwise exact solution X_t as a function of the driver value B_t and x0.
using ExactSolution = std::function<Eigen::VectorXd(const Eigen::VectorXd& x0, std::span<const double> b_t)>;

struct ConvergenceResult {
  /// Self-convergence: levels hold mean sup_k |X^{(j)} − X^{(j+1)}| on the
  /// coarse grid, scale = coarse step. fit.slope is the empirical rate.
  ScalingReport self;
  /// Error against the exact solution, when one was supplied (levels empty otherwise).
  ScalingReport exact;
  /// Per successive level pair, mean D_j / mean D_{j+1} (reduction factor under refinement).
  std::vector<double> refinement_factors;
};

/// Solves on nested dyadic grids of [0, horizon] with n_steps from `levels`
/// (increasing, each a power-of-two multiple of the previous). All levels of a
/// replica share one fBm driver sampled on the finest grid and restricted to
/// the coarser ones. Replica r draws from rng.replica(r). Blown-up replicas
/// are dropped and counted in `failures`.
ConvergenceResult convergence_study(const VectorFieldSet& fields, const Eigen::VectorXd& x0, double hurst,
                                    const std::vector<std::size_t>& levels, std::size_t replicas,
                                    const RngStream& rng, Scheme scheme = Scheme::euler_young,
                                    const ExactSolution& exact = {}, double horizon = 1.0,
                                    kernels::Execution exec = kernels::Execution::parallel);

}  // namespace ltlab::sde
