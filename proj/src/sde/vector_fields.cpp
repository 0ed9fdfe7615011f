#include "ltlab/sde/vector_fields.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ltlab::sde {

std::vector<std::string> drift_catalog() { return {"zero", "linear", "trig"}; }

std::vector<std::string> diffusion_catalog() {
  return {"zero", "identity", "scaled-identity", "linear", "trig", "logistic", "diag-elliptic"};
}

bool is_constant_diffusion(const std::string& diffusion) {
  return diffusion == "zero" || diffusion == "identity" || diffusion == "scaled-identity";
}

VectorFieldSet make_vector_fields(const std::string& drift, const std::string& diffusion, int d, double scale) {
  if (d < 1) throw std::invalid_argument("vector fields: d must be >= 1");
  VectorFieldSet f;
  f.d = d;
  f.drift_name = drift;
  f.diffusion_name = diffusion;
  f.constant_diffusion = is_constant_diffusion(diffusion);

  if (drift == "zero") {
    f.drift = [d](const Eigen::VectorXd&) { return Eigen::VectorXd::Zero(d).eval(); };
  } else if (drift == "linear") {
    f.drift = [scale](const Eigen::VectorXd& x) { return (-scale * x).eval(); };
  } else if (drift == "trig") {
    f.drift = [scale](const Eigen::VectorXd& x) { return (scale * x.array().sin()).matrix().eval(); };
  } else {
    throw std::invalid_argument("unknown drift '" + drift + "'");
  }

  if (diffusion == "zero") {
    f.diffusion = [d](const Eigen::VectorXd&) { return Eigen::MatrixXd::Zero(d, d).eval(); };
  } else if (diffusion == "identity") {
    f.diffusion = [d](const Eigen::VectorXd&) { return Eigen::MatrixXd::Identity(d, d).eval(); };
  } else if (diffusion == "scaled-identity") {
    f.diffusion = [d, scale](const Eigen::VectorXd&) { return (scale * Eigen::MatrixXd::Identity(d, d)).eval(); };
  } else if (diffusion == "linear") {
    f.diffusion = [](const Eigen::VectorXd& x) { return Eigen::MatrixXd(x.asDiagonal()); };
  } else if (diffusion == "trig") {
    f.diffusion = [](const Eigen::VectorXd& x) {
      return Eigen::MatrixXd((x.array().sin() + 2.0).matrix().asDiagonal());
    };
  } else if (diffusion == "logistic") {
    f.diffusion = [](const Eigen::VectorXd& x) {
      return Eigen::MatrixXd((1.0 + 1.0 / (1.0 + (-x.array()).exp())).matrix().asDiagonal());
    };
  } else if (diffusion == "diag-elliptic") {
    f.diffusion = [d](const Eigen::VectorXd& x) {
      Eigen::MatrixXd v = Eigen::MatrixXd::Identity(d, d);
      for (int l = 1; l < d; ++l) v(l, l) = 1.0 / (1.0 + x(0) * x(0)) + 1.0;
      return v;
    };
  } else {
    throw std::invalid_argument("unknown diffusion '" + diffusion + "'");
  }
  return f;
}

VectorFieldSet compose_sum(const VectorFieldSet& a, const VectorFieldSet& b) {
  if (a.d != b.d) throw std::invalid_argument("compose_sum: dimension mismatch");
  VectorFieldSet f;
  f.d = a.d;
  f.drift_name = a.drift_name + "+" + b.drift_name;
  f.diffusion_name = a.diffusion_name + "+" + b.diffusion_name;
  f.drift = [da = a.drift, db = b.drift](const Eigen::VectorXd& x) { return (da(x) + db(x)).eval(); };
  f.diffusion = [va = a.diffusion, vb = b.diffusion](const Eigen::VectorXd& x) { return (va(x) + vb(x)).eval(); };
  f.constant_diffusion = a.constant_diffusion && b.constant_diffusion;
  return f;
}

double check_ellipticity(const VectorFieldSet& fields, std::span<const Eigen::VectorXd> probe_points,
                         std::span<const Eigen::VectorXd> probe_dirs) {
  if (probe_points.empty() || probe_dirs.empty()) throw std::invalid_argument("check_ellipticity: need >= 1 probe");
  double lam = std::numeric_limits<double>::infinity();
  for (const auto& x : probe_points) {
    const Eigen::MatrixXd v = fields.diffusion(x);
    for (const auto& dir : probe_dirs) {
      const double n2 = dir.squaredNorm();
      if (n2 == 0.0) continue;
      lam = std::min(lam, (v.transpose() * dir).squaredNorm() / n2);
    }
  }
  return lam;
}

}  // namespace ltlab::sde
