#include "ltlab/core/numeric.hpp"

#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace ltlab {

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

double compensated_sum(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

namespace {

QuadratureRule build_rule(std::size_t n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int order = static_cast<int>(n);
  // legendre_p_zeros returns the non-negative zeros in increasing order.
  const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(order);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t k = 0; k < half; ++k) {
    const double x = zeros[k];
    const double dp = boost::math::legendre_p_prime<double>(order, x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // zeros[k] is the (k)-th non-negative root; mirror to fill both halves.
    const std::size_t hi = n / 2 + k;
    const std::size_t lo = (n - 1) / 2 - k;
    rule.nodes[hi] = x;
    rule.weights[hi] = w;
    rule.nodes[lo] = -x;
    rule.weights[lo] = w;
  }
  return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<QuadratureRule>(build_rule(n));
  return *slot;
}

double integrate(const std::function<double(double)>& f, double a, double b, std::size_t points,
                 std::size_t panels) {
  const QuadratureRule& rule = gauss_legendre(points);
  const double h = (b - a) / static_cast<double>(panels);
  double total = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + static_cast<double>(p) * h;
    const double mid = lo + 0.5 * h;
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      acc += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
    total += 0.5 * h * acc;
  }
  return total;
}

double integrate_left_singular(const std::function<double(double)>& f, double a, double b,
                               double p, std::size_t points) {
  if (!(p > -1.0)) throw std::invalid_argument("integrate_left_singular: need p > -1");
  if (p >= 0.0) return integrate(f, a, b, points);
  // s = a + L v^q with q = 1/(1+p): ds = L q v^{q-1} dv, and (s-a)^p ds = L^{1+p} q dv.
  const double L = b - a;
  const double q = 1.0 / (1.0 + p);
  auto g = [&](double v) {
    if (v <= 0.0) return 0.0;
    const double s = a + L * std::pow(v, q);
    return f(s) * L * q * std::pow(v, q - 1.0);
  };
  return integrate(g, 0.0, 1.0, points);
}

double integrate_right_singular(const std::function<double(double)>& f, double a, double b,
                                double p, std::size_t points) {
  return integrate_left_singular([&](double s) { return f(a + b - s); }, a, b, p, points);
}

}  // namespace ltlab
