#include "ltlab/kernels/batch.hpp"

#include <omp.h>

#include <algorithm>

#include "ltlab/core/numeric.hpp"

namespace ltlab::kernels {

void set_thread_count(int n) {
  if (n > 0) omp_set_num_threads(n);
}

int thread_count() { return omp_get_max_threads(); }

namespace {

Eigen::MatrixXd draw_block(const RngStream& rng, std::size_t b, Eigen::Index dim, Eigen::Index cols) {
  RngStream s = rng.replica(static_cast<std::uint32_t>(b));
  Eigen::MatrixXd xi(dim, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < dim; ++r) xi(r, c) = s.normal();
  return xi;
}

}  // namespace

std::vector<double> quadratic_forms(const Eigen::MatrixXd& a, const RngStream& rng, std::size_t count,
                                    Execution exec, std::size_t block) {
  std::vector<double> out(count);
  const double trace = a.trace();
  const std::size_t blocks = (count + block - 1) / block;
  for_each_replica(blocks, exec, [&](std::size_t b) {
    const std::size_t first = b * block;
    const auto cols = static_cast<Eigen::Index>(std::min(block, count - first));
    const Eigen::MatrixXd xi = draw_block(rng, b, a.rows(), cols);
    const Eigen::MatrixXd axi = a * xi;
    for (Eigen::Index c = 0; c < cols; ++c)
      out[first + static_cast<std::size_t>(c)] = xi.col(c).dot(axi.col(c)) - trace;
  });
  return out;
}

std::vector<double> quadratic_forms_reference(const Eigen::MatrixXd& a, const RngStream& rng,
                                              std::size_t count, std::size_t block) {
  std::vector<double> out(count);
  double trace = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) trace += a(i, i);
  const std::size_t blocks = (count + block - 1) / block;
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t first = b * block;
    const auto cols = static_cast<Eigen::Index>(std::min(block, count - first));
    const Eigen::MatrixXd xi = draw_block(rng, b, a.rows(), cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
      double q = 0.0;
      for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) q += xi(i, c) * a(i, j) * xi(j, c);
      out[first + static_cast<std::size_t>(c)] = q - trace;
    }
  }
  return out;
}

Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& samples, Execution exec) {
  const Eigen::Index n = samples.rows(), p = samples.cols();
  const Eigen::RowVectorXd mean = samples.colwise().mean();
  Eigen::MatrixXd cov(p, p);
  // One task per column pair row; compensated sums keep 1e5+ replica sums exact enough.
  for_each_replica(static_cast<std::size_t>(p), exec, [&](std::size_t ii) {
    const auto i = static_cast<Eigen::Index>(ii);
    for (Eigen::Index j = 0; j <= i; ++j) {
      CompensatedSum s;
      for (Eigen::Index r = 0; r < n; ++r) s.add((samples(r, i) - mean(i)) * (samples(r, j) - mean(j)));
      cov(i, j) = s.value() / static_cast<double>(n - 1);
    }
  });
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = i + 1; j < p; ++j) cov(i, j) = cov(j, i);
  return cov;
}

Eigen::MatrixXd sample_covariance_reference(const Eigen::MatrixXd& samples) {
  const Eigen::Index n = samples.rows(), p = samples.cols();
  std::vector<long double> mean(static_cast<std::size_t>(p), 0.0L);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index i = 0; i < p; ++i) mean[i] += samples(r, i);
  for (auto& m : mean) m /= static_cast<long double>(n);
  Eigen::MatrixXd cov(p, p);
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < p; ++j) {
      long double s = 0.0L;
      for (Eigen::Index r = 0; r < n; ++r) s += (samples(r, i) - mean[i]) * (samples(r, j) - mean[j]);
      cov(i, j) = static_cast<double>(s / static_cast<long double>(n - 1));
    }
  return cov;
}

}  // namespace ltlab::kernels
