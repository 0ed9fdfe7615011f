#pragma once

#include <vector>

#include "ltlab/core/process.hpp"
#include "ltlab/core/rng.hpp"
#include "ltlab/kernels/parallel.hpp"
#include "ltlab/rosenblatt/kernel.hpp"

namespace ltlab::rosenblatt {

/// Z_t = ξᵀA(t)ξ − tr A(t) at every grid time from one draw of ξ ∈ ℝ^N.
SamplePath sample_rosenblatt(const ChaosKernel& kernel, RngStream& rng);

/// `count` independent draws of Z at t_end (one matrix product per block of
/// 256). Replica blocks use rng.replica(b).
std::vector<double> sample_terminal(const ChaosKernel& kernel, const RngStream& rng, std::size_t count,
                                    kernels::Execution exec = kernels::Execution::parallel);

}  // namespace ltlab::rosenblatt
