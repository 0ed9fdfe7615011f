#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ltlab {

/// Neumaier-compensated accumulator. Sums of more than ~1e4 terms go through
/// this so histogram masses and Monte Carlo moments keep full precision.
class CompensatedSum {
public:
  void add(double x);
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_sum(std::span<const double> xs);

/// Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (cached per n, thread safe).
const QuadratureRule& gauss_legendre(std::size_t n);

/// Composite Gauss-Legendre of f over [a, b] with `panels` equal panels.
double integrate(const std::function<double(double)>& f, double a, double b,
                 std::size_t points = 32, std::size_t panels = 1);

/// ∫_a^b f(s) ds where f has an integrable endpoint singularity behaving like
/// (s - a)^p near a (p > -1). Uses s = a + (b - a) v^{1/(1+p)}, which makes the
/// transformed integrand smooth for power-law singularities.
double integrate_left_singular(const std::function<double(double)>& f, double a, double b,
                               double p, std::size_t points = 48);

/// Same as integrate_left_singular with the singularity at b.
double integrate_right_singular(const std::function<double(double)>& f, double a, double b,
                                double p, std::size_t points = 48);

}  // namespace ltlab
