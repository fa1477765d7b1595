// SPDX-License-Identifier: Apache-2.0
//
// Direct integration of the two-level Schrodinger equation in physical
// time with the explicit field components. Roughly two orders of magnitude
// slower than the phase-transformed solver; used as a cross-validation
// oracle, never in the production sweep.
#pragma once

#include <array>
#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "cqd/config.hpp"
#include "cqd/model.hpp"

namespace cqd::spinor {

/// Probability amplitudes of |+z> and |-z>.
struct SpinorState {
    std::complex<double> c1{1.0, 0.0};
    std::complex<double> c2{0.0, 0.0};

    double norm2() const { return std::norm(c1) + std::norm(c2); }
};

/// 2x2 Hamiltonian in J (row-major): H = -(hbar gamma_e / 2) B . sigma
/// with gamma_e = -|gamma_e|. Fields are evaluated at flight time t with
/// the nuclear azimuth phi_n.
std::array<std::complex<double>, 4> hamiltonian(double t, double theta_n,
                                                double phi_n,
                                                const RunConfig& cfg,
                                                const model::DerivedParams& p);

/// Phase transformation that removes the fast quadratic phase:
/// (c1, c2) = (e^{-i tau^2} f, e^{+i tau^2} g), so f = e^{+i tau^2} c1 and
/// g = e^{-i tau^2} c2.
std::pair<std::complex<double>, std::complex<double>> to_majorana_frame(
    const SpinorState& s, double tau);

SpinorState from_majorana_frame(std::complex<double> f, std::complex<double> g,
                                double tau);

struct OracleOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    long max_steps = 50'000'000;
    // Test hook: runs the mirrored field sweep B_z -> -B_z.
    bool reverse_sweep = false;
};

struct OracleRun {
    model::DerivedParams params;
    std::vector<double> eval_taus;
    std::vector<SpinorState> states;  // one per eval point
    SpinorState final_state;
    double max_norm_drift = 0;  // max | |c1|^2 + |c2|^2 - 1 | seen
};

/// Integrates the spinor from t(tau_start) to t(tau_end) starting in |+z>,
/// recording the state at each requested dimensionless time (must be
/// sorted, within the window). theta_n is frozen at theta_n0; the azimuth
/// follows phi_n = w_n tau + phi_n0.
OracleRun integrate_spinor(const RunConfig& cfg, double current,
                           double theta_n0, double phi_n0,
                           std::span<const double> eval_taus,
                           const OracleOptions& opts = {});

}  // namespace cqd::spinor
