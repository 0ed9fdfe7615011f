#include "ltlab/sde/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "ltlab/core/numeric.hpp"
#include "ltlab/gaussian/sampler.hpp"

namespace ltlab::sde {
namespace {

double sup_difference(const SamplePath& coarse, const SamplePath& fine) {
  const std::size_t stride = fine.grid().n_steps() / coarse.grid().n_steps();
  double sup = 0.0;
  for (std::size_t k = 0; k < coarse.size(); ++k)
    for (int l = 0; l < coarse.dim(); ++l)
      sup = std::max(sup, std::abs(coarse.value(k, l) - fine.value(k * stride, l)));
  return sup;
}

double sup_exact_error(const SamplePath& x, const SamplePath& driver, const Eigen::VectorXd& x0,
                       const ExactSolution& exact) {
  const std::size_t stride = driver.grid().n_steps() / x.grid().n_steps();
  double sup = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const Eigen::VectorXd e = exact(x0, driver.at(k * stride));
    for (int l = 0; l < x.dim(); ++l) sup = std::max(sup, std::abs(x.value(k, l) - e(l)));
  }
  return sup;
}

ScalingReport build_report(const std::string& quantity, const std::vector<double>& scales,
                           const std::vector<std::vector<double>>& samples) {
  ScalingReport rep;
  rep.statement = "sde-strong-convergence";
  rep.quantity = quantity;
  std::vector<double> lx, ly;
  bool all_zero = true;
  for (std::size_t j = 0; j < scales.size(); ++j) {
    LevelStat s;
    s.scale = scales[j];
    const SampleSummary sum = summarize(samples[j]);
    s.mean = sum.mean;
    s.std_error = sum.std_error;
    s.samples = sum.n;
    s.mean_log = s.mean > 0.0 ? std::log(s.mean) : -std::numeric_limits<double>::infinity();
    if (s.mean > 0.0) {
      all_zero = false;
      lx.push_back(std::log(s.scale));
      ly.push_back(s.mean_log);
    }
    rep.levels.push_back(s);
  }
  if (all_zero) {
    rep.flags.push_back("exact: all differences are zero");
    rep.pass = true;
  } else if (lx.size() >= 3) {
    rep.fit = linear_fit(lx, ly);
    rep.pass = rep.fit.ci_low > 0.0;
  } else {
    rep.flags.push_back("too few non-zero levels for a fit");
  }
  return rep;
}

}  // namespace

ConvergenceResult convergence_study(const VectorFieldSet& fields, const Eigen::VectorXd& x0, double hurst,
                                    const std::vector<std::size_t>& levels, std::size_t replicas,
                                    const RngStream& rng, Scheme scheme, const ExactSolution& exact,
                                    double horizon, kernels::Execution exec) {
  if (levels.size() < 2) throw std::invalid_argument("convergence_study: need at least two levels");
  for (std::size_t j = 1; j < levels.size(); ++j)
    if (levels[j] <= levels[j - 1] || levels[j] % levels[j - 1] != 0 ||
        ((levels[j] / levels[j - 1]) & (levels[j] / levels[j - 1] - 1)) != 0)
      throw std::invalid_argument("convergence_study: levels must be nested dyadically");
  require_scheme_supported(scheme, hurst, fields.constant_diffusion);

  const int d = fields.d;
  const TimeGrid finest(0.0, horizon, levels.back());
  const gaussian::GaussianSampler sampler(gaussian::CovarianceSpec::fbm(hurst), finest);
  const ProcessSpec driver_spec = ProcessSpec::defaults(ProcessClass::fbm, d, hurst);

  const std::size_t nl = levels.size();
  // Per replica: self differences (nl-1), exact errors (nl); empty when blown up.
  std::vector<std::optional<std::pair<std::vector<double>, std::vector<double>>>> per(replicas);
  kernels::for_each_replica(replicas, exec, [&](std::size_t r) {
    RngStream stream = rng.replica(static_cast<std::uint32_t>(r));
    const SamplePath driver = sampler.sample(d, stream, driver_spec);
    try {
      std::vector<SamplePath> sols;
      for (std::size_t n : levels) {
        const SamplePath b = driver.subsampled(levels.back() / n);
        sols.push_back(solve_sde(fields, x0, b, scheme).path);
      }
      std::vector<double> diffs, errs;
      for (std::size_t j = 0; j + 1 < nl; ++j) diffs.push_back(sup_difference(sols[j], sols[j + 1]));
      if (exact)
        for (std::size_t j = 0; j < nl; ++j) errs.push_back(sup_exact_error(sols[j], driver, x0, exact));
      per[r] = std::make_pair(std::move(diffs), std::move(errs));
    } catch (const BlowUpError&) {
      per[r].reset();
    }
  });

  std::size_t failures = 0;
  std::vector<std::vector<double>> diffs(nl - 1), errs(nl);
  for (const auto& p : per) {
    if (!p) {
      ++failures;
      continue;
    }
    for (std::size_t j = 0; j + 1 < nl; ++j) diffs[j].push_back(p->first[j]);
    for (std::size_t j = 0; j < p->second.size(); ++j) errs[j].push_back(p->second[j]);
  }
  if (failures == replicas) throw BlowUpError("convergence_study: every replica blew up", 0);

  ConvergenceResult out;
  std::vector<double> coarse_steps, steps;
  for (std::size_t j = 0; j < nl; ++j) steps.push_back(horizon / static_cast<double>(levels[j]));
  coarse_steps.assign(steps.begin(), steps.end() - 1);
  out.self = build_report("sup-norm self-difference between successive levels", coarse_steps, diffs);
  out.self.failures = failures;
  if (exact) {
    out.exact = build_report("sup-norm error against the exact solution", steps, errs);
    out.exact.failures = failures;
  }
  for (std::size_t j = 0; j + 2 < nl; ++j) {
    const double a = out.self.levels[j].mean, b = out.self.levels[j + 1].mean;
    out.refinement_factors.push_back(b > 0.0 ? a / b : std::numeric_limits<double>::infinity());
  }
  return out;
}

}  // namespace ltlab::sde
