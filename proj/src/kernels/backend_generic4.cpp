// SPDX-License-Identifier: Apache-2.0
#include "backends.hpp"
#include "flight_kernel.hpp"
#include "pack_generic.hpp"

namespace cqd::kernels {

void integrate_block_generic4(const majorana::OdeParams& shared,
                              std::span<const LaneParams> lanes,
                              std::span<SampleOutcome> out) {
    integrate_block_impl<GenericPack<4>>(shared, lanes, out);
}

}  // namespace cqd::kernels
