#include "ltlab/laws/path_source.hpp"

#include "ltlab/rosenblatt/sampler.hpp"
#include "ltlab/sde/vector_fields.hpp"

namespace ltlab::laws {

PathSource::PathSource(ProcessSpec spec, TimeGrid grid) : spec_(std::move(spec)), grid_(grid) {
  spec_.validate();
  switch (spec_.cls) {
    case ProcessClass::fbm:
      gaussian_ = std::make_shared<gaussian::GaussianSampler>(gaussian::CovarianceSpec::fbm(spec_.hurst), grid_);
      break;
    case ProcessClass::quasi_helix:
      gaussian_ = std::make_shared<gaussian::GaussianSampler>(
          gaussian::CovarianceSpec::from_catalog(spec_.covariance, spec_.hurst), grid_);
      break;
    case ProcessClass::rosenblatt:
      chaos_ = std::make_shared<rosenblatt::ChaosKernel>(rosenblatt::ChaosKernel::build(spec_.hurst, grid_, spec_.rank));
      break;
    case ProcessClass::fbm_sde:
      sde::require_scheme_supported(sde::scheme_from_string(spec_.scheme), spec_.hurst,
                                     sde::is_constant_diffusion(spec_.diffusion));
      gaussian_ = std::make_shared<gaussian::GaussianSampler>(gaussian::CovarianceSpec::fbm(spec_.hurst), grid_);
      fields_ = std::make_shared<sde::VectorFieldSet>(sde::make_vector_fields(spec_.drift, spec_.diffusion, spec_.d));
      break;
  }
}

SamplePath PathSource::draw(RngStream& rng) const {
  switch (spec_.cls) {
    case ProcessClass::fbm:
    case ProcessClass::quasi_helix:
      return gaussian_->sample(spec_.d, rng, spec_);
    case ProcessClass::rosenblatt: {
      SamplePath p = rosenblatt::sample_rosenblatt(*chaos_, rng);
      return SamplePath(p.grid(), 1, std::vector<double>(p.values().begin(), p.values().end()), p.seed(), spec_);
    }
    case ProcessClass::fbm_sde: {
      ProcessSpec driver_spec = ProcessSpec::defaults(ProcessClass::fbm, spec_.d, spec_.hurst);
      const SamplePath driver = gaussian_->sample(spec_.d, rng, driver_spec);
      Eigen::VectorXd x0 = Eigen::VectorXd::Zero(spec_.d);
      for (std::size_t l = 0; l < spec_.x0.size(); ++l) x0(static_cast<Eigen::Index>(l)) = spec_.x0[l];
      SamplePath p = sde::solve_sde(*fields_, x0, driver, sde::scheme_from_string(spec_.scheme)).path;
      return SamplePath(p.grid(), p.dim(), std::vector<double>(p.values().begin(), p.values().end()), p.seed(), spec_);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace ltlab::laws
