// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "cqd/constants.hpp"
#include "cqd/majorana.hpp"
#include "cqd/model.hpp"
#include "cqd/sampling.hpp"
#include "cqd/spinor.hpp"

using namespace cqd;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;
using cplx = std::complex<double>;
}  // namespace

TEST_SUITE_BEGIN("spinor");

TEST_CASE("hamiltonian structure") {
    RunConfig cfg;
    const auto p = model::derive_for_sample(cfg, 0.1, 1.2);

    SUBCASE("hermitian and traceless for generic fields") {
        const auto h = spinor::hamiltonian(1.3e-6, 1.2, 0.77, cfg, p);
        CHECK(h[0].imag() == 0.0);
        CHECK(h[3].imag() == 0.0);
        CHECK(h[0] + h[3] == cplx(0.0, 0.0));
        CHECK(h[1] == std::conj(h[2]));
    }
    SUBCASE("pure z field is diagonal with +-(hbar |gamma_e|/2) B_z") {
        RunConfig axial = cfg;
        axial.z_a = 1e-30;  // kill the transverse quadrupole component
        axial.constants.mu_n = 1e-60;
        const auto pa = model::derive_for_current(axial, 0.1);
        const double t = 2.0e-6;
        const double bz = pa.G * axial.velocity * t;
        const auto h = spinor::hamiltonian(t, 0.0, 0.0, axial, pa);
        const double want = 0.5 * hbar * axial.constants.gamma_e_mag * bz;
        CHECK(h[0].real() == Approx(want).epsilon(1e-12));
        CHECK(h[3].real() == Approx(-want).epsilon(1e-12));
        CHECK(std::abs(h[1]) < std::fabs(want) * 1e-15);
    }
}

TEST_CASE("majorana frame transformation") {
    spinor::SpinorState s{{0.6, 0.3}, {-0.2, 0.7}};
    SUBCASE("identity at tau = 0") {
        const auto [f, g] = spinor::to_majorana_frame(s, 0.0);
        CHECK(f == s.c1);
        CHECK(g == s.c2);
    }
    SUBCASE("unimodular factors preserve magnitudes") {
        for (double tau : {-7.3, 1.0, 41.0}) {
            const auto [f, g] = spinor::to_majorana_frame(s, tau);
            CHECK(std::abs(f) == Approx(std::abs(s.c1)).epsilon(1e-14));
            CHECK(std::abs(g) == Approx(std::abs(s.c2)).epsilon(1e-14));
            CHECK(std::norm(f) + std::norm(g) ==
                  Approx(s.norm2()).epsilon(1e-14));
        }
    }
    SUBCASE("round trip") {
        for (double tau : {-2.0, 13.5}) {
            const auto [f, g] = spinor::to_majorana_frame(s, tau);
            const auto back = spinor::from_majorana_frame(f, g, tau);
            CHECK(std::abs(back.c1 - s.c1) < 1e-14);
            CHECK(std::abs(back.c2 - s.c2) < 1e-14);
        }
    }
}

TEST_CASE("diagonal field: |c1| conserved, quadratic phase") {
    // With z_a -> 0 and no nuclear field, B = (0, 0, G v t): the
    // Hamiltonian stays diagonal, |c1| = 1 exactly, and the accumulated
    // phase is (|gamma_e|/2) G v (t^2 - t0^2) / 2.
    RunConfig cfg;
    cfg.z_a = 1e-30;
    cfg.constants.mu_n = 1e-60;
    cfg.tau_start = -10.0;  // short window keeps the oracle fast
    cfg.tau_end = 10.0;
    cfg.tail_start = 5.0;

    const double current = 0.1;
    std::vector<double> taus = {-5.0, 0.0, 3.0, 10.0};
    const auto run = spinor::integrate_spinor(cfg, current, 0.0, 0.0, taus);
    const auto dp = run.params;
    const double t0 = model::t_of_tau(cfg.tau_start, dp);
    for (std::size_t i = 0; i < taus.size(); ++i) {
        // |c1| is exactly conserved by the physics; the residual is
        // integrator drift at the configured tolerance.
        CHECK(std::abs(run.states[i].c1) == Approx(1.0).epsilon(1e-7));
        CHECK(std::abs(run.states[i].c2) < 1e-12);
        const double t = model::t_of_tau(taus[i], dp);
        const double phase = 0.5 * cfg.constants.gamma_e_mag * dp.G *
                             cfg.velocity * (t * t - t0 * t0) / 2.0;
        // c1 evolves as exp(+i gamma_e/2 int Bz dt) = exp(-i phase)
        const cplx want = std::exp(cplx(0.0, -phase));
        CHECK(std::abs(run.states[i].c1 - want) < 1e-6);
    }
}

TEST_CASE("frame equivalence against the transformed solver") {
    RunConfig cfg;
    sampling::SampleStream stream(31415, 0, 0);
    double worst = 0;
    for (int i = 0; i < 3; ++i) {
        const double current = cfg.currents[(i * 3 + 1) % 8];
        const auto orient = sampling::sample_anisotropic(stream);

        const auto dp = model::derive_for_sample(cfg, current, orient.theta_n0);
        majorana::OdeParams p;
        p.k0 = dp.k0;
        p.k1 = dp.k1;
        p.w_n = dp.w_n;
        p.phi_n0 = orient.phi_n0;
        p.with_trace = true;
        p.trace_points = 120;
        const auto sol = majorana::integrate(p);

        std::vector<double> taus;
        for (const auto& t : *sol.trace) {
            if (t.tau > cfg.tau_start) taus.push_back(t.tau);
        }
        const auto run = spinor::integrate_spinor(
            cfg, current, orient.theta_n0, orient.phi_n0, taus);
        for (std::size_t k = 0; k < taus.size(); ++k) {
            worst = std::max(worst,
                             std::fabs(std::abs(run.states[k].c1) -
                                       std::abs(sol.trace->at(k + 1).f)));
        }
        CHECK(run.max_norm_drift < 1e-6);
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("sweep reversal leaves |c1(t)| unchanged when B_n = 0") {
    // Conjugation symmetry of the linear-sweep Hamiltonian: reversing the
    // z sweep maps the solution to its complex conjugate (up to a sigma_z
    // rotation), so the |c1| trace is preserved point by point.
    RunConfig cfg;
    cfg.constants.mu_n = 1e-60;
    cfg.tau_start = -30.0;
    cfg.tau_end = 30.0;
    cfg.tail_start = 25.0;
    std::vector<double> taus = {-20.0, -5.0, 0.0, 5.0, 20.0, 30.0};

    spinor::OracleOptions fwd, rev;
    rev.reverse_sweep = true;
    const auto a = spinor::integrate_spinor(cfg, 0.05, 1.0, 0.0, taus, fwd);
    const auto b = spinor::integrate_spinor(cfg, 0.05, 1.0, 0.0, taus, rev);
    for (std::size_t i = 0; i < taus.size(); ++i) {
        CHECK(std::abs(a.states[i].c1) ==
              Approx(std::abs(b.states[i].c1)).epsilon(1e-8));
    }
}

TEST_CASE("eval grid validation") {
    RunConfig cfg;
    std::vector<double> bad1 = {-40.0};
    CHECK_THROWS_AS(spinor::integrate_spinor(cfg, 0.1, 1.0, 0.0, bad1),
                    std::domain_error);
    std::vector<double> bad2 = {1.0, 1.0};
    CHECK_THROWS_AS(spinor::integrate_spinor(cfg, 0.1, 1.0, 0.0, bad2),
                    std::domain_error);
}

TEST_SUITE_END();
