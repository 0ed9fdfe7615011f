#include "ltlab/rosenblatt/charfn.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

namespace ltlab::rosenblatt {
namespace {

std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> l(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(l.begin(), l.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });
  return l;
}

}  // namespace

double eigen_product_value(std::span<const double> lambdas) {
  double log_value = 0.0;
  for (double l : lambdas) log_value -= 0.25 * std::log1p(4.0 * l * l);
  return std::exp(log_value);
}

EigenProduct rosenblatt_charfn_bound(const ChaosKernel& kernel, std::span<const double> partition,
                                     std::span<const double> xi) {
  if (partition.size() < 2) throw std::invalid_argument("rosenblatt_charfn_bound: empty partition");
  if (xi.size() != partition.size() - 1)
    throw std::invalid_argument("rosenblatt_charfn_bound: need one frequency per increment");
  for (std::size_t k = 1; k < partition.size(); ++k)
    if (!(partition[k] > partition[k - 1]))
      throw std::invalid_argument("rosenblatt_charfn_bound: partition must be strictly increasing");
  const auto n = static_cast<Eigen::Index>(kernel.rank());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd prev = kernel.matrix_at(partition[0]);
  for (std::size_t j = 1; j < partition.size(); ++j) {
    Eigen::MatrixXd cur = kernel.matrix_at(partition[j]);
    if (xi[j - 1] != 0.0) m += xi[j - 1] * (cur - prev);
    prev = std::move(cur);
  }
  EigenProduct out;
  out.lambdas = sorted_eigenvalues(m);
  out.value = eigen_product_value(out.lambdas);
  return out;
}

IncrementCharfn rosenblatt_increment_charfn(const ChaosKernel& kernel) {
  const double t_end = kernel.grid().t_end();
  const double hurst = kernel.hurst();
  auto lambdas = std::make_shared<const std::vector<double>>(sorted_eigenvalues(kernel.matrix_at(t_end)));
  IncrementCharfn f;
  f.d = 1;
  f.value = [lambdas, t_end, hurst](double s, double t, std::span<const double> xi) {
    const double scale = std::pow((t - s) / t_end, hurst) * xi[0];
    double log_value = 0.0;
    for (double l : *lambdas) {
      const double x = 2.0 * scale * l;
      log_value -= 0.25 * std::log1p(x * x);
      if (log_value < -745.0) return 0.0;
    }
    return std::exp(log_value);
  };
  return f;
}

RosenblattDecayCheck check_rosenblatt_decay(const ChaosKernel& kernel, std::span<const double> xi_values,
                                            std::span<const double> deltas, std::span<const int> ks) {
  RosenblattDecayCheck out;
  const double t_end = kernel.grid().t_end();
  const double hurst = kernel.hurst();
  const std::vector<double> unit = sorted_eigenvalues(kernel.matrix_at(t_end));
  // Keeping only the 2n largest terms: ∏_{k≤2n} (4λ_k²ξ²)^{−1/4} = |ξ|^{−n} ∏_{k≤2n} (2|λ_k|)^{−1/2}.
  for (int k : ks) {
    if (k <= 0) continue;
    const std::size_t terms = static_cast<std::size_t>(2 * k);
    if (terms > unit.size()) throw std::invalid_argument("check_rosenblatt_decay: rank too small for k");
    double log_c = 0.0;
    for (std::size_t j = 0; j < terms; ++j) log_c -= 0.5 * std::log(2.0 * std::abs(unit[j]) * std::pow(t_end, -hurst));
    out.constant = std::max(out.constant, std::exp(log_c));
  }
  for (double delta : deltas) {
    const std::vector<double> lam = sorted_eigenvalues(kernel.matrix_at(delta));
    for (double x : xi_values) {
      std::vector<double> scaled(lam.size());
      for (std::size_t j = 0; j < lam.size(); ++j) scaled[j] = x * lam[j];
      const double value = eigen_product_value(scaled);
      for (int k : ks) {
        const double bound = out.constant * std::pow(std::abs(x), -k) * std::pow(delta, -hurst * k);
        out.max_excess = std::max(out.max_excess, value / bound);
        ++out.points;
      }
    }
  }
  out.holds = out.max_excess <= 1.0 + 1e-12;
  return out;
}

}  // namespace ltlab::rosenblatt

namespace ltlab::rosenblatt {

std::vector<CharfnComparison> compare_empirical_charfn(const Eigen::MatrixXd& a, std::span<const double> samples,
                                                       std::span<const double> frequencies) {
  if (samples.size() < 2) throw std::invalid_argument("compare_empirical_charfn: need at least two samples");
  if (a.rows() != a.cols()) throw std::invalid_argument("compare_empirical_charfn: matrix must be square");
  const std::vector<double> lambdas = sorted_eigenvalues(a);
  const double n = static_cast<double>(samples.size());
  std::vector<CharfnComparison> out;
  for (double xi : frequencies) {
    CharfnComparison c;
    c.xi = xi;
    double re = 0.0, im = 0.0;
    for (double z : samples) {
      re += std::cos(xi * z);
      im += std::sin(xi * z);
    }
    re /= n;
    im /= n;
    c.empirical = std::hypot(re, im);
    const double arg = std::atan2(im, re);
    double m = 0.0, m2 = 0.0;
    for (double z : samples) {
      const double p = std::cos(xi * z - arg);
      m += p;
      m2 += p * p;
    }
    m /= n;
    const double var = std::max(0.0, (m2 / n - m * m) * n / (n - 1.0));
    c.std_error = std::sqrt(var / n);
    std::vector<double> scaled(lambdas);
    for (double& l : scaled) l *= xi;
    c.eigen_product = eigen_product_value(scaled);
    c.z_score = c.std_error > 0.0 ? (c.empirical - c.eigen_product) / c.std_error : 0.0;
    out.push_back(c);
  }
  return out;
}

}  // namespace ltlab::rosenblatt
