#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltlab/core/grid.hpp"

namespace ltlab {

enum class ProcessClass { fbm, quasi_helix, rosenblatt, fbm_sde };

std::string to_string(ProcessClass c);
ProcessClass process_class_from_string(const std::string& name);

/// Raised when an experiment needs alpha * d < 1 and the process does not satisfy it.
class HypothesisViolation : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Declarative description of a process.
///
/// `alpha` is the regularity exponent of the increment bounds, `theta` the growth
/// exponent of the characteristic-function constant in m and `iota` the
/// exponent of p in the moment bound. The class-specific fields are only read
/// by the matching simulator.
struct ProcessSpec {
  ProcessClass cls = ProcessClass::fbm;
  int d = 1;
  double alpha = 0.5;
  double theta = 0.0;
  double iota = 0.5;

  // fbm / quasi_helix / rosenblatt / fbm_sde driver
  double hurst = 0.5;
  // quasi_helix covariance catalog name ("fbm", "sub-fbm")
  std::string covariance = "fbm";
  // rosenblatt
  std::size_t rank = 512;
  // fbm_sde
  std::string drift = "zero";
  std::string diffusion = "identity";
  std::vector<double> x0;
  std::string scheme = "euler-young";

  /// Spec with the class defaults for (alpha, theta, iota).
  static ProcessSpec defaults(ProcessClass cls, int d, double hurst);

  /// Checks structural validity (ranges of d, alpha, theta, iota, hurst).
  void validate() const;
  /// Throws HypothesisViolation unless alpha * d < 1.
  void require_local_time_regime() const;
};

/// A d-dimensional trajectory on a uniform grid. values is row-major with one
/// d-vector per grid point.
class SamplePath {
public:
  SamplePath(TimeGrid grid, int d, std::vector<double> values, std::uint64_t seed, ProcessSpec spec);

  const TimeGrid& grid() const { return grid_; }
  int dim() const { return d_; }
  std::size_t size() const { return grid_.n_points(); }
  std::uint64_t seed() const { return seed_; }
  const ProcessSpec& spec() const { return spec_; }

  std::span<const double> at(std::size_t k) const {
    return {values_.data() + k * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_)};
  }
  double value(std::size_t k, int component = 0) const {
    return values_[k * static_cast<std::size_t>(d_) + static_cast<std::size_t>(component)];
  }
  std::span<const double> values() const { return values_; }

  /// Component l as a contiguous series.
  std::vector<double> component(int l) const;

  /// Path multiplied by c (values only).
  SamplePath scaled(double c) const;
  /// Path restricted to every stride-th grid point.
  SamplePath subsampled(std::size_t stride) const;

private:
  TimeGrid grid_;
  int d_;
  std::vector<double> values_;
  std::uint64_t seed_;
  ProcessSpec spec_;
};

}  // namespace ltlab
