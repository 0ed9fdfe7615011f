#include "ltlab/sde/solver.hpp"

#include <cmath>
#include <sstream>

namespace ltlab::sde {

std::string to_string(Scheme s) { return s == Scheme::euler_young ? "euler-young" : "milstein-level2"; }

Scheme scheme_from_string(const std::string& name) {
  if (name == "euler-young") return Scheme::euler_young;
  if (name == "milstein-level2") return Scheme::milstein_level2;
  throw std::invalid_argument("unknown scheme '" + name + "' (known: euler-young, milstein-level2)");
}

void require_scheme_supported(Scheme scheme, double hurst, bool constant_diffusion) {
  if (constant_diffusion) return;
  if (hurst <= 1.0 / 3.0) {
    std::ostringstream os;
    os << "sde: H=" << hurst << " <= 1/3 is outside the supported range (level-2 schemes need H > 1/3)";
    throw std::invalid_argument(os.str());
  }
  if (scheme == Scheme::euler_young && hurst <= 0.5) {
    std::ostringstream os;
    os << "sde: euler-young needs H > 1/2 (Young regime), got H=" << hurst << "; use milstein-level2";
    throw std::invalid_argument(os.str());
  }
}

SdeSolution solve_sde(const VectorFieldSet& fields, const Eigen::VectorXd& x0, const SamplePath& driver,
                      Scheme scheme) {
  const int d = fields.d;
  if (driver.dim() != d) throw std::invalid_argument("sde: driver dimension must equal the field dimension");
  if (x0.size() != d) throw std::invalid_argument("sde: x0 must have d components");
  require_scheme_supported(scheme, driver.spec().hurst, fields.constant_diffusion);

  const auto& grid = driver.grid();
  const double dt = grid.step();
  std::vector<double> values(grid.n_points() * static_cast<std::size_t>(d));
  Eigen::VectorXd x = x0;
  Eigen::VectorXd db(d);
  for (int l = 0; l < d; ++l) values[static_cast<std::size_t>(l)] = x(l);

  for (std::size_t k = 0; k < grid.n_steps(); ++k) {
    for (int l = 0; l < d; ++l) db(l) = driver.value(k + 1, l) - driver.value(k, l);
    const Eigen::MatrixXd v = fields.diffusion(x);
    Eigen::VectorXd next = x + fields.drift(x) * dt + v * db;
    if (scheme == Scheme::milstein_level2) {
      // Σ_{l'} ΔB^{l'} (∂_{V_{l'}} V)(x) ΔB, with ∂_{V_{l'}}V ≈ (V(x+εV_{l'}) − V(x−εV_{l'}))/2ε.
      Eigen::VectorXd corr = Eigen::VectorXd::Zero(d);
      for (int lp = 0; lp < d; ++lp) {
        if (db(lp) == 0.0) continue;
        const Eigen::VectorXd dir = v.col(lp);
        const Eigen::MatrixXd dv =
            (fields.diffusion(x + kDerivativeStep * dir) - fields.diffusion(x - kDerivativeStep * dir)) /
            (2.0 * kDerivativeStep);
        corr += db(lp) * (dv * db);
      }
      next += 0.5 * corr;
    }
    x = next;
    if (!(x.norm() <= kOverflowGuard)) {
      std::ostringstream os;
      os << "sde: blow-up at step " << k + 1 << " (|X| > " << kOverflowGuard << ")";
      throw BlowUpError(os.str(), k + 1);
    }
    for (int l = 0; l < d; ++l) values[(k + 1) * static_cast<std::size_t>(d) + static_cast<std::size_t>(l)] = x(l);
  }

  ProcessSpec spec = ProcessSpec::defaults(ProcessClass::fbm_sde, d, driver.spec().hurst);
  spec.drift = fields.drift_name;
  spec.diffusion = fields.diffusion_name;
  spec.x0.assign(x0.data(), x0.data() + d);
  spec.scheme = to_string(scheme);
  return SdeSolution{SamplePath(grid, d, std::move(values), driver.seed(), spec), driver, scheme, x0};
}

}  // namespace ltlab::sde
