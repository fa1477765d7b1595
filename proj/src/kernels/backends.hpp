// SPDX-License-Identifier: Apache-2.0
//
// Internal backend entry points; one translation unit per instruction set.
#pragma once

#include <span>
#include <vector>

#include "cqd/kernels.hpp"
#include "cqd/majorana.hpp"

namespace cqd::kernels {

void integrate_block_scalar(const majorana::OdeParams& shared,
                            std::span<const LaneParams> lanes,
                            std::span<SampleOutcome> out);

void integrate_block_generic4(const majorana::OdeParams& shared,
                              std::span<const LaneParams> lanes,
                              std::span<SampleOutcome> out);

#if defined(__x86_64__) || defined(_M_X64)
void integrate_block_avx2(const majorana::OdeParams& shared,
                          std::span<const LaneParams> lanes,
                          std::span<SampleOutcome> out);

void integrate_block_avx512(const majorana::OdeParams& shared,
                            std::span<const LaneParams> lanes,
                            std::span<SampleOutcome> out);
#endif

#if defined(__aarch64__)
void integrate_block_neon(const majorana::OdeParams& shared,
                          std::span<const LaneParams> lanes,
                          std::span<SampleOutcome> out);
#endif

/// Scalar reference path with optional trace capture; used by the public
/// majorana::integrate.
void run_scalar(const majorana::OdeParams& params, const LaneParams& lane,
                SampleOutcome& out, std::vector<majorana::TracePoint>* trace);

}  // namespace cqd::kernels
