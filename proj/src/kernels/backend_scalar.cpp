// SPDX-License-Identifier: Apache-2.0
#include "backends.hpp"
#include "flight_kernel.hpp"
#include "pack_generic.hpp"

namespace cqd::kernels {

void integrate_block_scalar(const majorana::OdeParams& shared,
                            std::span<const LaneParams> lanes,
                            std::span<SampleOutcome> out) {
    integrate_block_impl<GenericPack<1>>(shared, lanes, out);
}

void run_scalar(const majorana::OdeParams& params, const LaneParams& lane,
                SampleOutcome& out, std::vector<majorana::TracePoint>* trace) {
    FlightKernel<GenericPack<1>>::run(params, &lane, &out, trace);
}

}  // namespace cqd::kernels
