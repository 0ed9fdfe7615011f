#include "ltlab/rosenblatt/sampler.hpp"

#include "ltlab/core/numeric.hpp"
#include "ltlab/kernels/batch.hpp"

namespace ltlab::rosenblatt {

SamplePath sample_rosenblatt(const ChaosKernel& kernel, RngStream& rng) {
  const auto& grid = kernel.grid();
  Eigen::VectorXd xi(static_cast<Eigen::Index>(kernel.rank()));
  for (Eigen::Index i = 0; i < xi.size(); ++i) xi(i) = rng.normal();
  const Eigen::VectorXd y = kernel.features().transpose() * xi;
  const auto& norms = kernel.feature_norms();
  const auto& off = kernel.step_offsets();

  std::vector<double> values(grid.n_points(), 0.0);
  CompensatedSum acc;
  std::size_t q = 0;
  for (std::size_t k = 0; k < grid.n_points(); ++k) {
    for (; q < off[k]; ++q) acc.add(y(static_cast<Eigen::Index>(q)) * y(static_cast<Eigen::Index>(q)) - norms(static_cast<Eigen::Index>(q)));
    values[k] = acc.value();
  }
  ProcessSpec spec = ProcessSpec::defaults(ProcessClass::rosenblatt, 1, kernel.hurst());
  spec.rank = kernel.rank();
  return SamplePath(grid, 1, std::move(values), rng.master_seed(), spec);
}

std::vector<double> sample_terminal(const ChaosKernel& kernel, const RngStream& rng, std::size_t count,
                                    kernels::Execution exec) {
  const Eigen::MatrixXd a = kernel.matrix_at_index(kernel.grid().n_steps());
  return kernels::quadratic_forms(a, rng, count, exec);
}

}  // namespace ltlab::rosenblatt
