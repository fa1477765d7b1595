// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <random>

#include "cqd/model.hpp"

using namespace cqd;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;
const PhysicalConstants C{};
}  // namespace

TEST_SUITE_BEGIN("model");

TEST_CASE("gradient from current") {
    // Direct arithmetic: G = 2 pi B_r^2 / (mu0 I)
    const double br = 0.42e-4;
    const double oracle_001 = 2.0 * pi * br * br / (C.mu0 * 0.01);
    CHECK(model::gradient_from_current(0.01, br) ==
          Approx(oracle_001).epsilon(1e-14));
    CHECK(model::gradient_from_current(0.01, br) == Approx(0.882).epsilon(1e-3));
    CHECK(model::gradient_from_current(0.1, br) == Approx(0.0882).epsilon(1e-3));

    SUBCASE("doubling the current halves the gradient exactly") {
        for (double I : {0.013, 0.2, 1.7}) {
            CHECK(model::gradient_from_current(2 * I, br) ==
                  model::gradient_from_current(I, br) / 2.0);
        }
    }
    SUBCASE("G(I1) I1 = G(I2) I2") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(1e-3, 10.0);
        for (int i = 0; i < 50; ++i) {
            const double i1 = u(rng), i2 = u(rng);
            CHECK(model::gradient_from_current(i1, br) * i1 ==
                  Approx(model::gradient_from_current(i2, br) * i2)
                      .epsilon(1e-12));
        }
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(model::gradient_from_current(0.0, br),
                        std::domain_error);
        CHECK_THROWS_AS(model::gradient_from_current(-1.0, br),
                        std::domain_error);
        CHECK_THROWS_AS(model::gradient_from_current(0.1, 0.0),
                        std::domain_error);
    }
}

TEST_CASE("torque-averaged fields") {
    // 5 mu0 mu / (16 pi R^3), evaluated with an independent grouping.
    const double pref = 5.0 / (16.0 * pi) * C.mu0 / std::pow(C.R_vdw, 3);
    CHECK(model::nuclear_field() == Approx(pref * C.mu_n).epsilon(1e-12));
    CHECK(model::electron_field() == Approx(pref * C.mu_e).epsilon(1e-12));
    CHECK(model::nuclear_field() == Approx(1.19e-5).epsilon(1e-2));
    CHECK(model::electron_field() == Approx(5.58e-2).epsilon(1e-2));

    SUBCASE("fields are linear in the moments") {
        PhysicalConstants c = C;
        c.mu_n = 0.0;
        CHECK(model::nuclear_field(c) == 0.0);
        c.mu_e = 0.0;
        CHECK(model::electron_field(c) == 0.0);
    }
    SUBCASE("shared prefactor cancels in the ratio") {
        const double ratio = model::electron_field() / model::nuclear_field();
        CHECK(ratio == Approx(C.mu_e / C.mu_n).epsilon(1e-12));
        CHECK(ratio == Approx(4696.0).epsilon(1e-3));
    }
}

TEST_CASE("adiabaticity k0") {
    const RunConfig cfg;
    const double G001 = model::gradient_from_current(0.01, cfg.B_r);
    const double G05 = model::gradient_from_current(0.5, cfg.B_r);
    const double oracle =
        C.gamma_e_mag * G001 * cfg.z_a * cfg.z_a / cfg.velocity;
    CHECK(model::adiabaticity_k0(G001, cfg.velocity, cfg.z_a) ==
          Approx(oracle).epsilon(1e-14));
    CHECK(model::adiabaticity_k0(G001, cfg.velocity, cfg.z_a) ==
          Approx(2.14).epsilon(5e-3));
    CHECK(model::adiabaticity_k0(G05, cfg.velocity, cfg.z_a) ==
          Approx(0.0428).epsilon(5e-3));

    SUBCASE("vanishes with the gradient") {
        CHECK(model::adiabaticity_k0(1e-30, cfg.velocity, cfg.z_a) < 1e-15);
        CHECK_THROWS_AS(model::adiabaticity_k0(0.0, cfg.velocity, cfg.z_a),
                        std::domain_error);
    }
    SUBCASE("two algebraic routes agree") {
        // gamma_e 2 pi B_r^2 z_a^2 / (mu0 I v), no intermediate G
        for (double I : cfg.currents) {
            const double direct = C.gamma_e_mag * 2.0 * pi * cfg.B_r *
                                  cfg.B_r * cfg.z_a * cfg.z_a /
                                  (C.mu0 * I * cfg.velocity);
            const double via_g = model::adiabaticity_k0(
                model::gradient_from_current(I, cfg.B_r), cfg.velocity,
                cfg.z_a);
            CHECK(via_g == Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("adiabaticity k1") {
    const RunConfig cfg;
    const double G05 = model::gradient_from_current(0.5, cfg.B_r);
    CHECK(model::adiabaticity_k1(G05, cfg.velocity, 0.0) == 0.0);
    CHECK(model::adiabaticity_k1(G05, cfg.velocity, pi / 2) ==
          Approx(1.76).epsilon(5e-3));

    SUBCASE("sin symmetry") {
        for (double th : {0.3, 1.0, 2.5}) {
            CHECK(model::adiabaticity_k1(G05, cfg.velocity, pi - th) ==
                  Approx(model::adiabaticity_k1(G05, cfg.velocity, th))
                      .epsilon(1e-12));
        }
    }
    SUBCASE("polar range enforced") {
        CHECK_THROWS_AS(model::adiabaticity_k1(G05, cfg.velocity, -0.1),
                        std::domain_error);
        CHECK_THROWS_AS(model::adiabaticity_k1(G05, cfg.velocity, pi + 0.1),
                        std::domain_error);
    }
}

TEST_CASE("dimensionless Larmor frequency") {
    const RunConfig cfg;
    const double G01 = model::gradient_from_current(0.1, cfg.B_r);
    const double oracle = 2.0 * C.gamma_n_mag * model::electron_field() /
                          std::sqrt(C.gamma_e_mag * G01 * cfg.velocity);
    CHECK(model::larmor_wn(G01, cfg.velocity) ==
          Approx(oracle).epsilon(1e-14));
    CHECK(model::larmor_wn(G01, cfg.velocity) == Approx(0.395).epsilon(3e-3));

    SUBCASE("vanishes with the electron field") {
        PhysicalConstants c = C;
        c.mu_e = 0.0;
        CHECK(model::larmor_wn(G01, cfg.velocity, c) == 0.0);
    }
    SUBCASE("scales as sqrt(I) at fixed B_r and v") {
        const double w1 = model::larmor_wn(
            model::gradient_from_current(0.1, cfg.B_r), cfg.velocity);
        const double w4 = model::larmor_wn(
            model::gradient_from_current(0.4, cfg.B_r), cfg.velocity);
        CHECK(w4 / w1 == Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("dimensionless time map") {
    const RunConfig cfg;
    SUBCASE("offset vanishes at theta = pi/2") {
        const auto p = model::derive_for_sample(cfg, 0.1, pi / 2);
        CHECK(std::fabs(model::tau_of_t(0.0, p)) < 1e-12);
    }
    SUBCASE("round trip") {
        const auto p = model::derive_for_sample(cfg, 0.05, 0.9);
        for (double t : {-3e-5, 0.0, 1.7e-5}) {
            CHECK(model::t_of_tau(model::tau_of_t(t, p), p) ==
                  Approx(t).epsilon(1e-12));
        }
    }
    SUBCASE("offset parity in theta") {
        const auto p0 = model::derive_for_sample(cfg, 0.1, 0.0);
        const auto p_pi = model::derive_for_sample(cfg, 0.1, pi);
        CHECK(p0.tau_offset == -p_pi.tau_offset);
        CHECK(p0.tau_offset > 0.0);
    }
    SUBCASE("strictly increasing with slope alpha > 0") {
        const auto p = model::derive_for_sample(cfg, 0.3, 2.0);
        CHECK(p.alpha > 0.0);
        CHECK(model::tau_of_t(1e-6, p) - model::tau_of_t(0.0, p) ==
              Approx(p.alpha * 1e-6).epsilon(1e-9));
    }
}

TEST_CASE("total field") {
    const RunConfig cfg;
    SUBCASE("bare quadrupole when the nuclear moment vanishes") {
        RunConfig c2 = cfg;
        c2.constants.mu_n = 0.0;
        const auto p = model::derive_for_current(c2, 0.1);
        const double t = 2.5e-6;
        const auto B = model::total_field(t, 1.1, 0.7, c2, p);
        CHECK(B[0] == 0.0);
        CHECK(B[1] == p.G * c2.z_a);
        CHECK(B[2] == p.G * c2.velocity * t);
    }
    SUBCASE("B_z crosses zero at the effective null point") {
        for (double th : {0.2, 1.0, 2.0, 3.0}) {
            const auto p = model::derive_for_sample(cfg, 0.1, th);
            const double t_null =
                -p.B_n_mag * std::cos(th) / (p.G * cfg.velocity);
            const auto B = model::total_field(t_null, th, 0.3, cfg, p);
            CHECK(std::fabs(B[2]) < 1e-18);
            // consistent with tau = 0 at the same flight time
            CHECK(std::fabs(model::tau_of_t(t_null, p)) < 1e-9);
        }
    }
    SUBCASE("transverse nuclear field orientation") {
        const auto p = model::derive_for_sample(cfg, 0.1, pi / 2);
        const double t = -1e-6;
        const auto B = model::total_field(t, pi / 2, 0.0, cfg, p);
        CHECK(B[0] == Approx(p.B_n_mag).epsilon(1e-15));
        CHECK(B[1] == Approx(p.G * cfg.z_a).epsilon(1e-15));
        CHECK(B[2] == Approx(p.G * cfg.velocity * t).epsilon(1e-9));
    }
}

TEST_CASE("run config validation") {
    RunConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    SUBCASE("bad sample count") {
        cfg.n_samples = 0;
        CHECK_THROWS_WITH_AS(cfg.validate(), "n_samples must be >= 1",
                             std::domain_error);
    }
    SUBCASE("bad window") {
        cfg.tail_start = 61.0;
        CHECK_THROWS_AS(cfg.validate(), std::domain_error);
    }
    SUBCASE("bad currents") {
        cfg.currents = {0.1, -0.2};
        CHECK_THROWS_AS(cfg.validate(), std::domain_error);
    }
}

TEST_SUITE_END();
