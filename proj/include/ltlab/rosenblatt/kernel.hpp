#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "ltlab/core/grid.hpp"

namespace ltlab::rosenblatt {

/// Discretized second-chaos kernel of the Rosenblatt process on [0, t_end].
///
/// The N degrees of freedom are the white-noise masses of N equal cells of
/// [0, t_end]. For each time t the form matrix is the Gram integral
///
///   A(t) = c ∫_0^t φ(u) φ(u)ᵀ du,
///   φ_i(u) = h^{−1/2} ∫_{cell i} (u/x)^{H/2} (u − x)_+^{H/2−1} dx,
///
/// so every A(t) is positive semidefinite by construction and A(t) − A(s) is
/// PSD for s < t. The inner x-integral is a regularized incomplete Beta
/// function. The u-integral uses Gauss-Legendre pieces split at every cell edge
/// and every path-grid point, with the substitution u = x_k + h v^{2/H} that
/// absorbs the (u − x_k)^{H/2} edge behaviour. c is fixed numerically so that
/// Var(Z_{t_end}) = 2 tr(A(t_end)²) = t_end^{2H}.
class ChaosKernel {
public:
  static ChaosKernel build(double hurst, const TimeGrid& grid, std::size_t rank = 512,
                           std::size_t nodes_per_cell = 8);

  double hurst() const { return hurst_; }
  const TimeGrid& grid() const { return grid_; }
  std::size_t rank() const { return rank_; }
  double normalization() const { return c_; }

  /// A(t) for any t in [0, t_end]. Path-grid times reuse the stored factor.
  Eigen::MatrixXd matrix_at(double t) const;
  /// A at path-grid index k.
  Eigen::MatrixXd matrix_at_index(std::size_t k) const;

  /// 2 tr(A(s) A(t)).
  double covariance(double s, double t) const;
  double variance(double t) const { return covariance(t, t); }

  /// Scaled feature matrix √c·φ(u_q)√w_q, columns ordered by u. Columns
  /// [offsets[k], offsets[k+1]) carry the nodes in path-grid step k.
  const Eigen::MatrixXd& features() const { return features_; }
  const std::vector<std::size_t>& step_offsets() const { return offsets_; }
  /// ‖feature column q‖², the centering term of each node.
  const Eigen::VectorXd& feature_norms() const { return norms_; }

  /// Kernel with A ≡ 0 on the grid (degenerate test object).
  static ChaosKernel zero(double hurst, const TimeGrid& grid, std::size_t rank);

private:
  // Unscaled √w φ columns for the u-interval [a, b].
  Eigen::MatrixXd feature_block(double a, double b, std::size_t nodes) const;

  double hurst_ = 0.7;
  TimeGrid grid_{0.0, 1.0, 1};
  std::size_t rank_ = 0;
  std::size_t nodes_per_cell_ = 8;
  double c_ = 1.0;
  double cell_ = 1.0;
  Eigen::MatrixXd features_;
  Eigen::VectorXd norms_;
  std::vector<std::size_t> offsets_;
};

}  // namespace ltlab::rosenblatt
