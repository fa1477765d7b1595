// SPDX-License-Identifier: Apache-2.0
#include "cqd/spinor.hpp"

#include <cmath>
#include <stdexcept>

#include "cqd/constants.hpp"
#include "cqd/majorana.hpp"

namespace cqd::spinor {

namespace {

using cplx = std::complex<double>;

// Cash-Karp 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 3.0 / 5.0, c5 = 1.0,
                 c6 = 7.0 / 8.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 3.0 / 10.0, a42 = -9.0 / 10.0, a43 = 6.0 / 5.0;
constexpr double a51 = -11.0 / 54.0, a52 = 5.0 / 2.0, a53 = -70.0 / 27.0,
                 a54 = 35.0 / 27.0;
constexpr double a61 = 1631.0 / 55296.0, a62 = 175.0 / 512.0,
                 a63 = 575.0 / 13824.0, a64 = 44275.0 / 110592.0,
                 a65 = 253.0 / 4096.0;
constexpr double b1 = 37.0 / 378.0, b3 = 250.0 / 621.0, b4 = 125.0 / 594.0,
                 b6 = 512.0 / 1771.0;
constexpr double e1 = b1 - 2825.0 / 27648.0, e3 = b3 - 18575.0 / 48384.0,
                 e4 = b4 - 13525.0 / 55296.0, e5 = -277.0 / 14336.0,
                 e6 = b6 - 1.0 / 4.0;

struct Deriv {
    cplx d1, d2;
};

struct FieldContext {
    double G_v;        // G * v, possibly sign-flipped for the mirrored sweep
    double B_trans_y;  // G * z_a
    double Bn;
    double sin_th, cos_th;
    double w_n, phi_n0;
    double alpha, tau_offset;
    double half_gamma_e;  // gamma_e / 2 (signed, negative)
};

Deriv rhs(double t, const SpinorState& y, const FieldContext& fc) {
    const double tau = fc.alpha * t + fc.tau_offset;
    const double phi_n = fc.w_n * tau + fc.phi_n0;
    const double bx = fc.Bn * fc.sin_th * std::cos(phi_n);
    const double by = fc.B_trans_y + fc.Bn * fc.sin_th * std::sin(phi_n);
    const double bz = fc.G_v * t + fc.Bn * fc.cos_th;

    // i hbar d/dt c = H c  with  H = -(hbar gamma_e / 2) B . sigma
    // => dc/dt = i (gamma_e / 2) (B . sigma) c
    const cplx i(0.0, 1.0);
    const cplx off(bx, -by);  // Bx - i By
    Deriv d;
    d.d1 = i * fc.half_gamma_e * (bz * y.c1 + off * y.c2);
    d.d2 = i * fc.half_gamma_e * (std::conj(off) * y.c1 - bz * y.c2);
    return d;
}

double error_norm(const Deriv& err, const SpinorState& y0,
                  const SpinorState& y1, double atol, double rtol) {
    const double comps_err[4] = {err.d1.real(), err.d1.imag(), err.d2.real(),
                                 err.d2.imag()};
    const double comps_y0[4] = {y0.c1.real(), y0.c1.imag(), y0.c2.real(),
                                y0.c2.imag()};
    const double comps_y1[4] = {y1.c1.real(), y1.c1.imag(), y1.c2.real(),
                                y1.c2.imag()};
    double sum = 0;
    for (int i = 0; i < 4; ++i) {
        const double sc =
            atol + rtol * std::max(std::fabs(comps_y0[i]),
                                   std::fabs(comps_y1[i]));
        const double q = comps_err[i] / sc;
        sum += q * q;
    }
    return std::sqrt(0.25 * sum);
}

}  // namespace

std::array<cplx, 4> hamiltonian(double t, double theta_n, double phi_n,
                                const RunConfig& cfg,
                                const model::DerivedParams& p) {
    const auto B = model::total_field(t, theta_n, phi_n, cfg, p);
    const double gamma_e = -cfg.constants.gamma_e_mag;
    const double pref = -0.5 * hbar * gamma_e;
    const cplx off(B[0], -B[1]);
    return {pref * B[2], pref * off, pref * std::conj(off), -pref * B[2]};
}

std::pair<cplx, cplx> to_majorana_frame(const SpinorState& s, double tau) {
    const cplx i(0.0, 1.0);
    const double t2 = tau * tau;
    return {std::exp(i * t2) * s.c1, std::exp(-i * t2) * s.c2};
}

SpinorState from_majorana_frame(cplx f, cplx g, double tau) {
    const cplx i(0.0, 1.0);
    const double t2 = tau * tau;
    return {std::exp(-i * t2) * f, std::exp(i * t2) * g};
}

OracleRun integrate_spinor(const RunConfig& cfg, double current,
                           double theta_n0, double phi_n0,
                           std::span<const double> eval_taus,
                           const OracleOptions& opts) {
    OracleRun run;
    run.params = model::derive_for_sample(cfg, current, theta_n0);
    run.eval_taus.assign(eval_taus.begin(), eval_taus.end());

    for (std::size_t i = 0; i < run.eval_taus.size(); ++i) {
        const double tau = run.eval_taus[i];
        if (tau < cfg.tau_start || tau > cfg.tau_end) {
            throw std::domain_error("eval tau outside integration window");
        }
        if (i > 0 && !(tau > run.eval_taus[i - 1])) {
            throw std::domain_error("eval taus must be strictly increasing");
        }
    }

    FieldContext fc;
    fc.G_v = run.params.G * cfg.velocity * (opts.reverse_sweep ? -1.0 : 1.0);
    fc.B_trans_y = run.params.G * cfg.z_a;
    fc.Bn = run.params.B_n_mag;
    fc.sin_th = std::sin(theta_n0);
    fc.cos_th = std::cos(theta_n0);
    fc.w_n = run.params.w_n;
    fc.phi_n0 = phi_n0;
    fc.alpha = run.params.alpha;
    fc.tau_offset = run.params.tau_offset;
    fc.half_gamma_e = -0.5 * cfg.constants.gamma_e_mag;

    const double t_start = model::t_of_tau(cfg.tau_start, run.params);
    const double t_end = model::t_of_tau(cfg.tau_end, run.params);

    double t = t_start;
    SpinorState y;
    double h = (t_end - t_start) * 1e-6;
    std::size_t next_eval = 0;
    long steps = 0;
    run.max_norm_drift = 0;

    auto record_drift = [&run](const SpinorState& s) {
        const double drift = std::fabs(s.norm2() - 1.0);
        if (drift > run.max_norm_drift) run.max_norm_drift = drift;
    };

    // Leading eval points that coincide with the window start.
    while (next_eval < run.eval_taus.size() &&
           model::t_of_tau(run.eval_taus[next_eval], run.params) <= t) {
        run.states.push_back(y);
        ++next_eval;
    }

    while (t < t_end) {
        if (++steps > opts.max_steps) {
            throw majorana::integration_error(
                "spinor step budget exhausted",
                model::tau_of_t(t, run.params));
        }
        bool hit_eval = false;
        double target = t_end;
        if (next_eval < run.eval_taus.size()) {
            const double t_eval =
                model::t_of_tau(run.eval_taus[next_eval], run.params);
            if (t_eval < target) {
                target = t_eval;
                hit_eval = true;
            }
        }
        bool clamped = false;
        if (t + h >= target) {
            h = target - t;
            clamped = true;
        }
        if (!(h > 0) || t + 0.1 * h == t) {
            throw majorana::integration_error(
                "spinor step size underflow", model::tau_of_t(t, run.params));
        }

        const Deriv k1 = rhs(t, y, fc);
        SpinorState yt{y.c1 + h * (a21 * k1.d1), y.c2 + h * (a21 * k1.d2)};
        const Deriv k2 = rhs(t + c2 * h, yt, fc);
        yt = {y.c1 + h * (a31 * k1.d1 + a32 * k2.d1),
              y.c2 + h * (a31 * k1.d2 + a32 * k2.d2)};
        const Deriv k3 = rhs(t + c3 * h, yt, fc);
        yt = {y.c1 + h * (a41 * k1.d1 + a42 * k2.d1 + a43 * k3.d1),
              y.c2 + h * (a41 * k1.d2 + a42 * k2.d2 + a43 * k3.d2)};
        const Deriv k4 = rhs(t + c4 * h, yt, fc);
        yt = {y.c1 + h * (a51 * k1.d1 + a52 * k2.d1 + a53 * k3.d1 +
                          a54 * k4.d1),
              y.c2 + h * (a51 * k1.d2 + a52 * k2.d2 + a53 * k3.d2 +
                          a54 * k4.d2)};
        const Deriv k5 = rhs(t + c5 * h, yt, fc);
        yt = {y.c1 + h * (a61 * k1.d1 + a62 * k2.d1 + a63 * k3.d1 +
                          a64 * k4.d1 + a65 * k5.d1),
              y.c2 + h * (a61 * k1.d2 + a62 * k2.d2 + a63 * k3.d2 +
                          a64 * k4.d2 + a65 * k5.d2)};
        const Deriv k6 = rhs(t + c6 * h, yt, fc);

        SpinorState ynew{
            y.c1 + h * (b1 * k1.d1 + b3 * k3.d1 + b4 * k4.d1 + b6 * k6.d1),
            y.c2 + h * (b1 * k1.d2 + b3 * k3.d2 + b4 * k4.d2 + b6 * k6.d2)};
        const Deriv errv{
            h * (e1 * k1.d1 + e3 * k3.d1 + e4 * k4.d1 + e5 * k5.d1 +
                 e6 * k6.d1),
            h * (e1 * k1.d2 + e3 * k3.d2 + e4 * k4.d2 + e5 * k5.d2 +
                 e6 * k6.d2)};
        const double err =
            error_norm(errv, y, ynew, opts.abs_tol, opts.rel_tol);
        if (!std::isfinite(err)) {
            throw majorana::integration_error(
                "spinor state became non-finite",
                model::tau_of_t(t, run.params));
        }

        if (err > 1.0) {
            h = std::max(0.1 * h, 0.9 * h * std::pow(err, -0.25));
            continue;
        }

        t = clamped ? target : t + h;
        y = ynew;
        record_drift(y);
        if (hit_eval && t == target) {
            run.states.push_back(y);
            ++next_eval;
            // Duplicated eval points are rejected up front, so one per hit.
        }
        const double grow =
            err > 1.89e-4 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h = h * std::min(5.0, grow);
    }

    while (next_eval < run.eval_taus.size()) {
        run.states.push_back(y);
        ++next_eval;
    }
    run.final_state = y;
    return run;
}

}  // namespace cqd::spinor
