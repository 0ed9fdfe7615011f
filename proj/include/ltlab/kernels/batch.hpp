#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "ltlab/core/rng.hpp"
#include "ltlab/kernels/parallel.hpp"

namespace ltlab::kernels {

/// Samples of the centered quadratic form ξᵀAξ − tr(A), ξ ~ N(0, I).
///
/// Samples are generated in blocks of `block` draws; block b uses
/// rng.replica(b), so the result is independent of the thread count. The
/// parallel path evaluates each block with one matrix product.
std::vector<double> quadratic_forms(const Eigen::MatrixXd& a, const RngStream& rng, std::size_t count,
                                    Execution exec = Execution::parallel, std::size_t block = 256);

/// Serial reference: same draws, explicit double loop per sample.
std::vector<double> quadratic_forms_reference(const Eigen::MatrixXd& a, const RngStream& rng,
                                              std::size_t count, std::size_t block = 256);

/// Unbiased sample covariance of the columns of `samples` (rows = replicas).
Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& samples, Execution exec = Execution::parallel);
Eigen::MatrixXd sample_covariance_reference(const Eigen::MatrixXd& samples);

}  // namespace ltlab::kernels
