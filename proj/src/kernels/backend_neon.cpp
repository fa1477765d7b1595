// SPDX-License-Identifier: Apache-2.0
#include "backends.hpp"

#if defined(__aarch64__)

#include "flight_kernel.hpp"
#include "pack_neon.hpp"

namespace cqd::kernels {

void integrate_block_neon(const majorana::OdeParams& shared,
                          std::span<const LaneParams> lanes,
                          std::span<SampleOutcome> out) {
    integrate_block_impl<NeonPack>(shared, lanes, out);
}

}  // namespace cqd::kernels

#endif
