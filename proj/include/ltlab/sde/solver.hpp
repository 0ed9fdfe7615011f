#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

#include "ltlab/core/process.hpp"
#include "ltlab/sde/vector_fields.hpp"

namespace ltlab::sde {

enum class Scheme { euler_young, milstein_level2 };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);

/// ‖X_k‖ exceeded the overflow guard.
class BlowUpError : public std::runtime_error {
public:
  BlowUpError(const std::string& what, std::size_t step) : std::runtime_error(what), step_(step) {}
  std::size_t step() const { return step_; }

private:
  std::size_t step_;
};

inline constexpr double kOverflowGuard = 1e8;
inline constexpr double kDerivativeStep = 1e-5;

struct SdeSolution {
  SamplePath path;
  SamplePath driver;
  Scheme scheme;
  Eigen::VectorXd x0;
};

/// X_{k+1} = X_k + V_0(X_k)Δ + Σ_l V_l(X_k)ΔB^l_k, and for milstein-level2 the
/// extra ½ Σ_{l,l'} (∂_{V_{l'}} V_l)(X_k) ΔB^{l'}_k ΔB^l_k with the directional
/// derivative taken by central differences.
///
/// euler-young needs the driver's Hurst index above 1/2; indices in (1/3, 1/2]
/// are accepted only with milstein-level2; H ≤ 1/3 is rejected.
SdeSolution solve_sde(const VectorFieldSet& fields, const Eigen::VectorXd& x0, const SamplePath& driver,
                      Scheme scheme);

/// Rejects (scheme, H) pairs outside the supported range. With additive noise
/// both schemes reduce to x0 + ∫V_0 dt + V·B and every H ∈ (0, 1) is accepted.
void require_scheme_supported(Scheme scheme, double hurst, bool constant_diffusion = false);

}  // namespace ltlab::sde
