#pragma once

#include <Eigen/Dense>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "ltlab/core/grid.hpp"
#include "ltlab/core/process.hpp"
#include "ltlab/core/rng.hpp"
#include "ltlab/gaussian/covariance.hpp"

namespace ltlab::gaussian {

enum class SamplingMethod { automatic, cholesky, circulant_embedding };

/// The covariance matrix on the grid could not be factorized.
class NotPsdError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The circulant embedding has a negative eigenvalue beyond round-off.
class EmbeddingFallbackNeeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Grids with more points than this use circulant embedding under `automatic`.
inline constexpr std::size_t kCirculantThreshold = 512;

/// Exact sampler of one Gaussian component on a fixed grid.
///
/// The factorization (Cholesky factor or embedding eigenvalues) is computed
/// once in the constructor and shared read-only by every draw, so one sampler
/// can serve many threads as long as each brings its own RngStream.
///
/// Circulant embedding (Davies-Harte) applies to fBm on grids starting at 0:
/// the increments are stationary with lag covariance
/// ½Δ^{2H}(|k+1|^{2H} − 2|k|^{2H} + |k−1|^{2H}). Eigenvalues in
/// [−1e-9·λ_max, 0) are clipped to zero; anything more negative falls back to
/// Cholesky (automatic) or raises EmbeddingFallbackNeeded (explicit request).
class GaussianSampler {
public:
  GaussianSampler(CovarianceSpec cov, TimeGrid grid, SamplingMethod method = SamplingMethod::automatic);
  ~GaussianSampler();
  GaussianSampler(GaussianSampler&&) noexcept;
  GaussianSampler& operator=(GaussianSampler&&) noexcept;

  SamplingMethod method() const { return method_; }
  const TimeGrid& grid() const { return grid_; }
  const CovarianceSpec& covariance() const { return cov_; }

  /// Draws `count` independent 1-D paths (1 or 2) into out[0..count).
  /// Circulant embedding yields two independent paths per transform.
  void sample_components(RngStream& rng, std::span<std::vector<double>> out) const;

  /// d independent components, assembled into a SamplePath.
  SamplePath sample(int d, RngStream& rng, const ProcessSpec& spec) const;

  /// Covariance of the grid values implied by the factorization actually used.
  Eigen::MatrixXd implied_covariance() const;

  /// Sum of clipped negative embedding eigenvalues (0 for Cholesky).
  double clipped_mass() const { return clipped_mass_; }

private:
  struct FftPlan;

  void build_cholesky();
  bool build_circulant(bool allow_fallback);

  CovarianceSpec cov_;
  TimeGrid grid_;
  SamplingMethod method_;

  // Cholesky: factor of the grid points with positive variance.
  std::vector<std::size_t> active_;
  Eigen::MatrixXd chol_;

  // Circulant embedding.
  std::size_t embed_size_ = 0;
  std::vector<double> sqrt_eig_;  // sqrt(λ_k / M)
  std::vector<double> eig_;       // clipped λ_k
  std::unique_ptr<FftPlan> plan_;
  double clipped_mass_ = 0.0;
};

/// Convenience wrapper: builds a sampler and draws one d-dimensional path.
SamplePath sample_gaussian_path(const CovarianceSpec& cov, int d, const TimeGrid& grid, RngStream& rng,
                                SamplingMethod method = SamplingMethod::automatic);

}  // namespace ltlab::gaussian
