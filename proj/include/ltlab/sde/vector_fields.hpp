#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ltlab::sde {

/// Drift V_0 : ℝ^d → ℝ^d and diffusion V : ℝ^d → ℝ^{d×d} (columns V_1..V_d).
/// Fields are assumed smooth with bounded derivatives up to order 3.
struct VectorFieldSet {
  int d = 1;
  std::string drift_name = "zero";
  std::string diffusion_name = "identity";
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> drift;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> diffusion;
  /// V does not depend on x (additive noise).
  bool constant_diffusion = false;
};

/// Catalog names. Drift: zero, linear (−scale·x), trig (scale·sin x).
/// Diffusion: zero, identity, scaled-identity (scale·I), linear (diag x),
/// trig (diag(sin x + 2)), logistic (diag(1 + 1/(1 + e^{−x}))),
/// diag-elliptic (diag(1, 1/(1 + x_1²) + 1, …, 1/(1 + x_1²) + 1)).
VectorFieldSet make_vector_fields(const std::string& drift, const std::string& diffusion, int d,
                                  double scale = 1.0);

std::vector<std::string> drift_catalog();
std::vector<std::string> diffusion_catalog();
/// zero, identity and scaled-identity.
bool is_constant_diffusion(const std::string& diffusion);

/// Sum of two field sets of the same dimension.
VectorFieldSet compose_sum(const VectorFieldSet& a, const VectorFieldSet& b);

/// min over probes of vᵀ V(x) V(x)ᵀ v / ‖v‖².
double check_ellipticity(const VectorFieldSet& fields, std::span<const Eigen::VectorXd> probe_points,
                         std::span<const Eigen::VectorXd> probe_dirs);

}  // namespace ltlab::sde
