#pragma once

#include <memory>
#include <optional>

#include "ltlab/core/process.hpp"
#include "ltlab/core/rng.hpp"
#include "ltlab/gaussian/sampler.hpp"
#include "ltlab/rosenblatt/kernel.hpp"
#include "ltlab/sde/solver.hpp"

namespace ltlab::laws {

/// Draws sample paths of any implemented process class on a fixed grid.
/// Factorizations are built once and shared read-only; draw() is safe to call
/// concurrently with distinct streams.
class PathSource {
public:
  PathSource(ProcessSpec spec, TimeGrid grid);

  const ProcessSpec& spec() const { return spec_; }
  const TimeGrid& grid() const { return grid_; }

  /// One path. SDE paths that blow up raise sde::BlowUpError.
  SamplePath draw(RngStream& rng) const;

private:
  ProcessSpec spec_;
  TimeGrid grid_;
  std::shared_ptr<const gaussian::GaussianSampler> gaussian_;
  std::shared_ptr<const rosenblatt::ChaosKernel> chaos_;
  std::shared_ptr<const sde::VectorFieldSet> fields_;
};

}  // namespace ltlab::laws
