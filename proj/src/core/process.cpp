#include "ltlab/core/process.hpp"

#include <cmath>
#include <sstream>

namespace ltlab {

std::string to_string(ProcessClass c) {
  switch (c) {
    case ProcessClass::fbm: return "fbm";
    case ProcessClass::quasi_helix: return "gaussian-quasi-helix";
    case ProcessClass::rosenblatt: return "rosenblatt";
    case ProcessClass::fbm_sde: return "fbm-sde";
  }
  return "unknown";
}

ProcessClass process_class_from_string(const std::string& name) {
  if (name == "fbm") return ProcessClass::fbm;
  if (name == "gaussian-quasi-helix" || name == "quasi-helix") return ProcessClass::quasi_helix;
  if (name == "rosenblatt") return ProcessClass::rosenblatt;
  if (name == "fbm-sde") return ProcessClass::fbm_sde;
  throw std::invalid_argument("unknown process class '" + name + "'");
}

ProcessSpec ProcessSpec::defaults(ProcessClass cls, int d, double hurst) {
  ProcessSpec s;
  s.cls = cls;
  s.d = d;
  s.hurst = hurst;
  s.alpha = hurst;
  switch (cls) {
    case ProcessClass::fbm:
    case ProcessClass::quasi_helix:
      s.theta = 0.0;
      s.iota = 0.5;
      break;
    case ProcessClass::rosenblatt:
      s.theta = 0.0;
      s.iota = 1.0;
      break;
    case ProcessClass::fbm_sde:
      s.theta = 4.0 / hurst;
      s.iota = 0.5;
      s.x0.assign(static_cast<std::size_t>(d), 0.0);
      break;
  }
  return s;
}

void ProcessSpec::validate() const {
  if (d < 1) throw std::invalid_argument("process: dimension d must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("process: alpha must lie in (0,1)");
  if (!(theta >= 0.0)) throw std::invalid_argument("process: theta must be >= 0");
  if (!(iota >= 0.0 && iota <= 1.0)) throw std::invalid_argument("process: iota must lie in [0,1]");
  if (!(hurst > 0.0 && hurst < 1.0)) throw std::invalid_argument("process: hurst must lie in (0,1)");
  if (cls == ProcessClass::rosenblatt) {
    if (d != 1) throw std::invalid_argument("process: rosenblatt is one-dimensional");
    if (!(hurst > 0.5)) throw std::invalid_argument("process: rosenblatt needs hurst in (1/2,1)");
    if (rank < 16) throw std::invalid_argument("process: rosenblatt rank must be >= 16");
  }
  if (cls == ProcessClass::fbm_sde && !x0.empty() && x0.size() != static_cast<std::size_t>(d))
    throw std::invalid_argument("process: x0 must have d components");
}

void ProcessSpec::require_local_time_regime() const {
  if (alpha * d >= 1.0) {
    std::ostringstream os;
    os << "hypothesis violation: local-time experiments need α ∈ (0,1/d); got α=" << alpha << " with d=" << d
       << " (αd=" << alpha * d << " >= 1)";
    throw HypothesisViolation(os.str());
  }
}

SamplePath::SamplePath(TimeGrid grid, int d, std::vector<double> values, std::uint64_t seed,
                       ProcessSpec spec)
    : grid_(grid), d_(d), values_(std::move(values)), seed_(seed), spec_(std::move(spec)) {
  if (d < 1) throw std::invalid_argument("sample path: d must be >= 1");
  if (values_.size() != grid_.n_points() * static_cast<std::size_t>(d))
    throw std::invalid_argument("sample path: values must hold (n_steps+1)*d entries");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("sample path: non-finite value");
}

std::vector<double> SamplePath::component(int l) const {
  std::vector<double> out(size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = value(k, l);
  return out;
}

SamplePath SamplePath::scaled(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return SamplePath(grid_, d_, std::move(v), seed_, spec_);
}

SamplePath SamplePath::subsampled(std::size_t stride) const {
  TimeGrid g = grid_.coarsened(stride);
  std::vector<double> v(g.n_points() * static_cast<std::size_t>(d_));
  for (std::size_t k = 0; k < g.n_points(); ++k)
    for (int l = 0; l < d_; ++l) v[k * d_ + l] = value(k * stride, l);
  return SamplePath(g, d_, std::move(v), seed_, spec_);
}

}  // namespace ltlab
