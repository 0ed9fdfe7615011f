#include "ltlab/rosenblatt/kernel.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <stdexcept>

#include "ltlab/core/numeric.hpp"

namespace ltlab::rosenblatt {
namespace {

// Breakpoints of [a, b]: a, every cell edge strictly inside, b.
std::vector<double> split_at_edges(double a, double b, double h) {
  std::vector<double> pts{a};
  const auto first = static_cast<long>(std::floor(a / h)) + 1;
  for (long k = first; k * h < b; ++k)
    if (k * h > a) pts.push_back(k * h);
  pts.push_back(b);
  return pts;
}

}  // namespace

Eigen::MatrixXd ChaosKernel::feature_block(double a, double b, std::size_t nodes) const {
  const double h = cell_;
  const double e = 0.5 * hurst_;
  const double p = 1.0 / e;
  const double bfac = boost::math::beta(1.0 - e, e);
  const QuadratureRule& gl = gauss_legendre(nodes);
  const std::vector<double> pts = split_at_edges(a, b, h);
  const auto n = static_cast<Eigen::Index>(rank_);
  Eigen::MatrixXd out(n, static_cast<Eigen::Index>((pts.size() - 1) * nodes));
  std::vector<double> ib(rank_ + 1);
  Eigen::Index col = 0;
  for (std::size_t piece = 0; piece + 1 < pts.size(); ++piece) {
    const double lo = pts[piece], hi = pts[piece + 1];
    const double xk = std::floor((0.5 * (lo + hi)) / h) * h;
    const double v0 = std::pow(std::max(0.0, (lo - xk) / h), e);
    const double v1 = std::pow(std::min(1.0, (hi - xk) / h), e);
    for (std::size_t q = 0; q < nodes; ++q, ++col) {
      const double v = v0 + 0.5 * (v1 - v0) * (gl.nodes[q] + 1.0);
      const double u = xk + h * std::pow(v, p);
      const double w = 0.5 * (v1 - v0) * gl.weights[q] * h * p * std::pow(v, p - 1.0);
      for (std::size_t j = 0; j <= rank_; ++j) {
        const double z = std::min(1.0, static_cast<double>(j) * h / u);
        ib[j] = (z >= 1.0) ? 1.0 : boost::math::ibeta(1.0 - e, e, z);
      }
      const double scale = std::sqrt(w / h) * std::pow(u, e) * bfac;
      for (std::size_t i = 0; i < rank_; ++i)
        out(static_cast<Eigen::Index>(i), col) = scale * (ib[i + 1] - ib[i]);
    }
  }
  return out;
}

ChaosKernel ChaosKernel::build(double hurst, const TimeGrid& grid, std::size_t rank, std::size_t nodes_per_cell) {
  if (!(hurst > 0.5 && hurst < 1.0)) throw std::invalid_argument("rosenblatt kernel: H must lie in (1/2, 1)");
  if (rank < 16) throw std::invalid_argument("rosenblatt kernel: rank must be >= 16");
  if (nodes_per_cell < 2) throw std::invalid_argument("rosenblatt kernel: need >= 2 nodes per cell");
  ChaosKernel k;
  k.hurst_ = hurst;
  k.grid_ = grid;
  k.rank_ = rank;
  k.nodes_per_cell_ = nodes_per_cell;
  k.cell_ = grid.t_end() / static_cast<double>(rank);

  // Nodes per path step scale with the step length so fine path grids stay affordable.
  const double ratio = grid.step() / k.cell_;
  const std::size_t nodes = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(nodes_per_cell * std::min(1.0, ratio))));

  std::vector<Eigen::MatrixXd> blocks;
  k.offsets_.assign(grid.n_points(), 0);
  std::size_t total = 0;
  Eigen::MatrixXd head = grid.t_start() > 0.0 ? k.feature_block(0.0, grid.t_start(), nodes_per_cell)
                                              : Eigen::MatrixXd(static_cast<Eigen::Index>(rank), 0);
  total += static_cast<std::size_t>(head.cols());
  blocks.push_back(std::move(head));
  for (std::size_t s = 0; s < grid.n_steps(); ++s) {
    k.offsets_[s] = total;
    blocks.push_back(k.feature_block(grid.point(s), grid.point(s + 1), nodes));
    total += static_cast<std::size_t>(blocks.back().cols());
  }
  k.offsets_[grid.n_steps()] = total;
  k.features_.resize(static_cast<Eigen::Index>(rank), static_cast<Eigen::Index>(total));
  Eigen::Index col = 0;
  for (const auto& b : blocks) {
    k.features_.middleCols(col, b.cols()) = b;
    col += b.cols();
  }

  const Eigen::MatrixXd a_end = k.features_ * k.features_.transpose();
  const double var = 2.0 * a_end.squaredNorm();
  k.c_ = std::sqrt(std::pow(grid.t_end(), 2.0 * hurst) / var);
  k.features_ *= std::sqrt(k.c_);
  k.norms_ = k.features_.colwise().squaredNorm().transpose();
  return k;
}

ChaosKernel ChaosKernel::zero(double hurst, const TimeGrid& grid, std::size_t rank) {
  ChaosKernel k;
  k.hurst_ = hurst;
  k.grid_ = grid;
  k.rank_ = rank;
  k.cell_ = grid.t_end() / static_cast<double>(rank);
  k.c_ = 0.0;
  k.features_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rank), static_cast<Eigen::Index>(grid.n_steps()));
  k.norms_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.n_steps()));
  k.offsets_.resize(grid.n_points());
  for (std::size_t s = 0; s < grid.n_points(); ++s) k.offsets_[s] = s;
  return k;
}

Eigen::MatrixXd ChaosKernel::matrix_at_index(std::size_t k) const {
  if (k >= grid_.n_points()) throw std::out_of_range("rosenblatt kernel: grid index out of range");
  const auto cols = static_cast<Eigen::Index>(offsets_[k]);
  if (cols == 0) return Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rank_), static_cast<Eigen::Index>(rank_));
  const auto f = features_.leftCols(cols);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rank_), static_cast<Eigen::Index>(rank_));
  a.selfadjointView<Eigen::Lower>().rankUpdate(f);
  return a.selfadjointView<Eigen::Lower>();
}

Eigen::MatrixXd ChaosKernel::matrix_at(double t) const {
  if (t < 0.0 || t > grid_.t_end() * (1.0 + 1e-12)) throw std::out_of_range("rosenblatt kernel: t outside [0, t_end]");
  if (t == 0.0 || c_ == 0.0)
    return Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rank_), static_cast<Eigen::Index>(rank_));
  if (t >= grid_.t_start()) {
    const std::size_t k = grid_.nearest_index(t);
    if (grid_.point(k) == t) return matrix_at_index(k);
  }
  const Eigen::MatrixXd f = std::sqrt(c_) * feature_block(0.0, std::min(t, grid_.t_end()), nodes_per_cell_);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rank_), static_cast<Eigen::Index>(rank_));
  a.selfadjointView<Eigen::Lower>().rankUpdate(f);
  return a.selfadjointView<Eigen::Lower>();
}

double ChaosKernel::covariance(double s, double t) const {
  const Eigen::MatrixXd as = matrix_at(s);
  const Eigen::MatrixXd at = (s == t) ? as : matrix_at(t);
  return 2.0 * as.cwiseProduct(at).sum();
}

}  // namespace ltlab::rosenblatt
