// SPDX-License-Identifier: Apache-2.0
//
// Runtime-dispatched integration kernels. Each backend integrates batches
// of independent flights in lockstep, one flight per SIMD lane, with fully
// per-lane adaptive step control. Every backend is bit-identical to the
// scalar reference lane for lane; the equivalence tests enforce this.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "cqd/majorana.hpp"

namespace cqd::kernels {

/// Per-sample inputs that vary across lanes of a batch.
struct LaneParams {
    double k1;
    double phi_n0;
};

enum class Status { Ok, StepUnderflow, NonFinite, MaxSteps };

struct SampleOutcome {
    double f_final_mag = 0;  // mean |f| over the tail grid (unclamped)
    double tail_std = 0;
    double max_abs_f = 0;
    Status status = Status::Ok;
    double tau_reached = 0;  // tau where integration stopped on failure
    long n_steps = 0;        // accepted + rejected step attempts
};

/// Integrates lanes.size() flights sharing (k0, w_n, window, tolerances)
/// from `shared`; the k1/phi_n0 members of `shared` are ignored.
using BlockFn = void (*)(const majorana::OdeParams& shared,
                         std::span<const LaneParams> lanes,
                         std::span<SampleOutcome> out);

struct Backend {
    std::string name;
    int width;
    BlockFn integrate_block;
};

/// All backends compiled into this binary and usable on this CPU.
const std::vector<Backend>& available_backends();

/// "scalar", "generic4", "avx2", "neon", or "auto" (widest available).
/// Throws std::domain_error for unknown or unsupported names.
const Backend& select_backend(const std::string& name);

}  // namespace cqd::kernels
