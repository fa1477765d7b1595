// SPDX-License-Identifier: Apache-2.0
//
// Backend equivalence: every SIMD backend must reproduce the scalar
// reference kernel bit for bit, lane by lane. The integrator template and
// compile flags (-ffp-contract=off) are designed around this property, so
// any drift here is a bug, not tolerance noise.
#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <vector>

#include "cqd/kernels.hpp"
#include "cqd/model.hpp"
#include "cqd/sampling.hpp"

using namespace cqd;
using namespace cqd::kernels;

namespace {

majorana::OdeParams shared_for(double current) {
    RunConfig cfg;
    const auto dp = model::derive_for_current(cfg, current);
    majorana::OdeParams p;
    p.k0 = dp.k0;
    p.w_n = dp.w_n;
    return p;
}

std::vector<LaneParams> random_lanes(int n, int salt) {
    RunConfig cfg;
    std::vector<LaneParams> lanes(n);
    for (int i = 0; i < n; ++i) {
        sampling::SampleStream s(9000 + salt, 0, static_cast<unsigned>(i));
        const auto o = sampling::sample_anisotropic(s);
        const auto dp = model::derive_for_sample(cfg, 0.1, o.theta_n0);
        lanes[i] = {dp.k1, o.phi_n0};
    }
    return lanes;
}

}  // namespace

TEST_SUITE_BEGIN("kernels");

TEST_CASE("registry") {
    const auto& all = available_backends();
    REQUIRE(!all.empty());
    CHECK(all.front().name == "scalar");
    CHECK(all.front().width == 1);
    CHECK_NOTHROW(select_backend("auto"));
    CHECK_NOTHROW(select_backend("scalar"));
    CHECK_THROWS_AS(select_backend("mmx"), std::domain_error);
}

TEST_CASE("all backends match the scalar reference bit for bit") {
    const auto shared = shared_for(0.1);
    // 13 lanes: exercises full batches plus a padded remainder for W = 4, 8
    const auto lanes = random_lanes(13, 1);

    std::vector<SampleOutcome> ref(lanes.size());
    select_backend("scalar").integrate_block(shared, lanes, ref);

    for (const auto& b : available_backends()) {
        CAPTURE(b.name);
        std::vector<SampleOutcome> out(lanes.size());
        b.integrate_block(shared, lanes, out);
        for (std::size_t i = 0; i < lanes.size(); ++i) {
            CAPTURE(i);
            CHECK(out[i].f_final_mag == ref[i].f_final_mag);
            CHECK(out[i].tail_std == ref[i].tail_std);
            CHECK(out[i].max_abs_f == ref[i].max_abs_f);
            CHECK(out[i].n_steps == ref[i].n_steps);
            CHECK(out[i].status == ref[i].status);
        }
    }
}

TEST_CASE("batch composition does not affect results") {
    // Integrating a sample alone or inside any batch must give identical
    // bits; the sweep relies on this to stay deterministic under sorting.
    const auto shared = shared_for(0.5);
    const auto lanes = random_lanes(9, 2);
    const auto& wide = select_backend("auto");

    std::vector<SampleOutcome> together(lanes.size());
    wide.integrate_block(shared, lanes, together);

    for (std::size_t i = 0; i < lanes.size(); ++i) {
        SampleOutcome alone;
        wide.integrate_block(shared, {&lanes[i], 1}, {&alone, 1});
        CHECK(alone.f_final_mag == together[i].f_final_mag);
        CHECK(alone.tail_std == together[i].tail_std);
        CHECK(alone.n_steps == together[i].n_steps);
    }
}

TEST_CASE("status propagation per lane") {
    auto shared = shared_for(0.1);
    shared.max_steps = 64;
    const auto lanes = random_lanes(5, 3);
    for (const auto& b : available_backends()) {
        CAPTURE(b.name);
        std::vector<SampleOutcome> out(lanes.size());
        b.integrate_block(shared, lanes, out);
        for (const auto& o : out) {
            CHECK(o.status == Status::MaxSteps);
            CHECK(o.tau_reached > shared.tau_start);
            CHECK(o.tau_reached < shared.tau_end);
        }
    }
}

TEST_SUITE_END();
