// SPDX-License-Identifier: Apache-2.0
//
// Compiled with -mavx2. Callers must check cpu support before dispatching.
#include "backends.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include "flight_kernel.hpp"
#include "pack_avx2.hpp"

namespace cqd::kernels {

void integrate_block_avx2(const majorana::OdeParams& shared,
                          std::span<const LaneParams> lanes,
                          std::span<SampleOutcome> out) {
    integrate_block_impl<Avx2Pack>(shared, lanes, out);
}

}  // namespace cqd::kernels

#endif
