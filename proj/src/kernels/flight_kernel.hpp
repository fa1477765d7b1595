// SPDX-License-Identifier: Apache-2.0
//
// Width-templated flight integrator. One flight per lane, advanced in
// lockstep with fully independent per-lane adaptive step control, so each
// lane reproduces the scalar reference bit for bit. Instantiated once per
// pack type from the backend translation units.
//
// Method: Dormand-Prince 5(4) with PI step-size control and the standard
// fourth-order continuous extension, used to sample |f| on the uniform
// tail grid (and, in the scalar instantiation, an optional full trace).
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "cqd/kernels.hpp"
#include "cqd/majorana.hpp"
#include "pack_math.hpp"

namespace cqd::kernels {

namespace dp5 {
// Dormand-Prince 5(4) tableau.
inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0,
                        c5 = 8.0 / 9.0;
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                        a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                        a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                        a65 = -5103.0 / 18656.0;
inline constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0,
                        a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                        a76 = 11.0 / 84.0;
// Error coefficients (5th order minus embedded 4th order).
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                        e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                        e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Continuous-extension coefficients.
inline constexpr double d1 = -12715105075.0 / 11282082432.0,
                        d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0,
                        d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0,
                        d7 = 69997945.0 / 29380423.0;
// Step controller.
inline constexpr double beta = 0.04;
inline constexpr double expo1 = 0.2 - beta * 0.75;
inline constexpr double safe = 0.9;
inline constexpr double facc1 = 5.0;   // 1 / min shrink factor
inline constexpr double facc2 = 0.1;   // 1 / max growth factor
inline constexpr double uround = 2.3e-16;
}  // namespace dp5

template <class P>
struct FlightKernel {
    static constexpr int W = P::width;
    using Mask = typename P::Mask;
    using State = std::array<P, 4>;  // (Re f, Im f, Re f', Im f')

    // Loop-invariant equation coefficients.
    struct Coeffs {
        P k1;        // per-lane nuclear adiabaticity
        P sqrt_k1;
        P kterm;     // k0 + k1
        P cross;     // 2 sqrt(k0) sqrt(k1), with the mutation sign applied
        Mask k1_zero;
        double sqrt_k0;
        double w_n;
        double ksign;  // -1 only in mutation-test mode
    };

    // d/dtau of (f, f'). The second derivative is
    //   f'' = (sqrt(k1) w_n / (i sqrt(k1) + sqrt(k0) e^{i phi}) + 4 i tau) f'
    //         - (k0 + k1 + 2 sqrt(k0 k1) sin phi) f
    // with phi = w_n tau + phi_n0; the fraction is 0 when k1 = 0.
    static State deriv(P tau, const State& y, const Coeffs& cf, P phi0) {
        P phi = P::broadcast(cf.w_n) * tau + phi0;
        P sph, cph;
        fast_sincos(phi, sph, cph);

        P restoring = cf.kterm + cf.cross * sph;
        if (cf.ksign < 0) restoring = -restoring;

        P den_re = P::broadcast(cf.sqrt_k0) * cph;
        P den_im = cf.sqrt_k1 + P::broadcast(cf.sqrt_k0) * sph;
        P den2 = den_re * den_re + den_im * den_im;
        P scale = (cf.sqrt_k1 * P::broadcast(cf.w_n)) / den2;
        P t_re = select(cf.k1_zero, P::zero(), scale * den_re);
        P t_im = select(cf.k1_zero, P::zero(), -(scale * den_im));

        P coef_re = t_re;
        P coef_im = t_im + P::broadcast(4.0) * tau;

        const P& fr = y[0];
        const P& fi = y[1];
        const P& dr = y[2];
        const P& di = y[3];
        State out;
        out[0] = dr;
        out[1] = di;
        out[2] = coef_re * dr - coef_im * di - restoring * fr;
        out[3] = coef_re * di + coef_im * dr - restoring * fi;
        return out;
    }

    static P scaled_rms(const State& num, const State& sc) {
        P q0 = num[0] / sc[0];
        P q1 = num[1] / sc[1];
        P q2 = num[2] / sc[2];
        P q3 = num[3] / sc[3];
        P sum = q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3;
        return sqrt(P::broadcast(0.25) * sum);
    }

    // Standard starting-step heuristic, evaluated per lane.
    static P initial_step(P tau0, const State& y, const State& f0,
                          const Coeffs& cf, P phi0, double span, double atol,
                          double rtol) {
        State sc;
        for (int i = 0; i < 4; ++i) {
            sc[i] = P::broadcast(atol) + P::broadcast(rtol) * abs(y[i]);
        }
        P d0 = scaled_rms(y, sc);
        P d1 = scaled_rms(f0, sc);
        Mask tiny01 = cmp_lt(d0, P::broadcast(1e-5)) ||
                      cmp_lt(d1, P::broadcast(1e-5));
        P h0 = select(tiny01, P::broadcast(1e-6),
                      P::broadcast(0.01) * (d0 / d1));
        h0 = min(h0, P::broadcast(span));

        State ye;
        for (int i = 0; i < 4; ++i) ye[i] = y[i] + h0 * f0[i];
        State f1 = deriv(tau0 + h0, ye, cf, phi0);
        State df;
        for (int i = 0; i < 4; ++i) df[i] = f1[i] - f0[i];
        P d2 = scaled_rms(df, sc) / h0;

        P der = max(d1, d2);
        Mask flat = cmp_le(der, P::broadcast(1e-15));
        P h1 = fast_pow_pos(P::broadcast(0.01) / der, 0.2);
        P h_flat = max(P::broadcast(1e-6), h0 * P::broadcast(1e-3));
        P h = select(flat, h_flat, min(P::broadcast(100.0) * h0, h1));
        return min(h, P::broadcast(span));
    }

    static constexpr double huge = 1e300;

    struct DenseCursor {
        double start = 0;  // grid point j sits at start + (j + 1) * step
        double step = 1;
        int count = 0;     // total grid points
        double last = 0;   // forced value of the final grid point
        int next[W] = {0};

        double point(int j) const {
            return j == count - 1 ? last : start + (j + 1) * step;
        }

        // Pack of each lane's next pending grid point (huge when drained).
        P next_tau_pack() const {
            double v[W];
            for (int i = 0; i < W; ++i) {
                v[i] = next[i] < count ? point(next[i]) : huge;
            }
            return P::load(v);
        }
    };

    static void run(const majorana::OdeParams& sh, const LaneParams* lanes,
                    SampleOutcome* out,
                    std::vector<majorana::TracePoint>* trace) {
        if (sh.method == majorana::Method::FixedRk4) {
            run_fixed_rk4(sh, lanes, out, trace);
            return;
        }
        run_adaptive(sh, lanes, out, trace);
    }

    // Classical fixed-step RK4 cross-check path. All lanes share the step
    // sequence; segments land exactly on every sampling point.
    static void run_fixed_rk4(const majorana::OdeParams& sh,
                              const LaneParams* lanes, SampleOutcome* out,
                              std::vector<majorana::TracePoint>* trace) {
        const double span = sh.tau_end - sh.tau_start;
        const double h_nom = span / static_cast<double>(sh.fixed_steps);

        Coeffs cf;
        P phi0;
        init_coeffs(sh, lanes, cf, phi0);

        DenseCursor tail;
        tail.start = sh.tail_start;
        tail.count = sh.tail_points;
        tail.step = (sh.tau_end - sh.tail_start) / sh.tail_points;
        tail.last = sh.tau_end;

        DenseCursor trc;
        const bool tracing = trace && W == 1;
        if (tracing) {
            trc.start = sh.tau_start;
            trc.count = sh.trace_points;
            trc.step = span / sh.trace_points;
            trc.last = sh.tau_end;
            trace->clear();
            trace->reserve(sh.trace_points + 1);
            trace->push_back({sh.tau_start, {1.0, 0.0}});
        }

        double tail_sum[W] = {0}, tail_sumsq[W] = {0};
        int tail_n[W] = {0};
        Status status[W];
        double tau_stop[W] = {0};
        for (int i = 0; i < W; ++i) status[i] = Status::Ok;

        State y = {P::broadcast(1.0), P::zero(), P::zero(), P::zero()};
        P max_abs2 = P::broadcast(1.0);
        double tau = sh.tau_start;
        long steps = 0;
        int it = 0, ic = 0;

        while (tail.next[0] < tail.count ||
               (tracing && trc.next[0] < trc.count)) {
            // next sampling target (grids share points only at tau_end)
            double target = sh.tau_end;
            bool is_tail = false, is_trc = false;
            if (it < tail.count && tail.point(it) <= target) {
                target = tail.point(it);
                is_tail = true;
            }
            if (tracing && ic < trc.count) {
                const double tg = trc.point(ic);
                if (tg < target) {
                    target = tg;
                    is_tail = false;
                    is_trc = true;
                } else if (tg == target) {
                    is_trc = true;
                }
            }

            const double seg = target - tau;
            const long n_seg = std::max<long>(
                1, static_cast<long>(std::ceil(seg / h_nom - 1e-9)));
            const double h = seg / static_cast<double>(n_seg);
            const P hp = P::broadcast(h);
            for (long k = 0; k < n_seg; ++k) {
                const P t0 = P::broadcast(tau + h * static_cast<double>(k));
                State k1 = deriv(t0, y, cf, phi0);
                State yt;
                const P half = P::broadcast(0.5);
                for (int i = 0; i < 4; ++i)
                    yt[i] = y[i] + hp * (half * k1[i]);
                State k2 = deriv(t0 + half * hp, yt, cf, phi0);
                for (int i = 0; i < 4; ++i)
                    yt[i] = y[i] + hp * (half * k2[i]);
                State k3 = deriv(t0 + half * hp, yt, cf, phi0);
                for (int i = 0; i < 4; ++i) yt[i] = y[i] + hp * k3[i];
                State k4 = deriv(t0 + hp, yt, cf, phi0);
                const P sixth = P::broadcast(1.0 / 6.0);
                const P two = P::broadcast(2.0);
                for (int i = 0; i < 4; ++i) {
                    y[i] = y[i] +
                           hp * (sixth *
                                 (k1[i] + two * k2[i] + two * k3[i] + k4[i]));
                }
                P f2 = y[0] * y[0] + y[1] * y[1];
                max_abs2 = max(max_abs2, f2);
                ++steps;
            }
            tau = target;

            double fr[W], fi[W];
            y[0].store(fr);
            y[1].store(fi);
            for (int i = 0; i < W; ++i) {
                const double a2 = fr[i] * fr[i] + fi[i] * fi[i];
                if (status[i] == Status::Ok && !std::isfinite(a2)) {
                    status[i] = Status::NonFinite;
                    tau_stop[i] = tau;
                }
                if (status[i] != Status::Ok) continue;
                if (is_tail) {
                    const double af = std::sqrt(a2);
                    tail_sum[i] += af;
                    tail_sumsq[i] += af * af;
                    ++tail_n[i];
                }
            }
            if (tracing && is_trc) {
                trace->push_back({tau, {fr[0], fi[0]}});
            }
            if (is_tail) {
                ++it;
                for (int i = 0; i < W; ++i) tail.next[i] = it;
            }
            if (is_trc) ++ic;
        }

        double max2_arr[W];
        max_abs2.store(max2_arr);
        for (int i = 0; i < W; ++i) {
            SampleOutcome& o = out[i];
            o.status = status[i];
            o.tau_reached = status[i] == Status::Ok ? sh.tau_end : tau_stop[i];
            o.n_steps = steps;
            o.max_abs_f = std::sqrt(max2_arr[i]);
            if (tail_n[i] > 0) {
                const double mean = tail_sum[i] / tail_n[i];
                const double var = tail_sumsq[i] / tail_n[i] - mean * mean;
                o.f_final_mag = mean;
                o.tail_std = var > 0 ? std::sqrt(var) : 0.0;
            } else {
                o.f_final_mag = 0;
                o.tail_std = 0;
            }
        }
    }

    static void init_coeffs(const majorana::OdeParams& sh,
                            const LaneParams* lanes, Coeffs& cf, P& phi0) {
        double k1v[W], p0v[W];
        for (int i = 0; i < W; ++i) {
            k1v[i] = lanes[i].k1;
            p0v[i] = lanes[i].phi_n0;
        }
        cf.k1 = P::load(k1v);
        cf.sqrt_k1 = sqrt(cf.k1);
        cf.sqrt_k0 = std::sqrt(sh.k0);
        cf.kterm = P::broadcast(sh.k0) + cf.k1;
        cf.cross = P::broadcast(2.0) * (P::broadcast(cf.sqrt_k0) * cf.sqrt_k1);
        cf.k1_zero = cmp_le(cf.k1, P::zero());
        cf.w_n = sh.w_n;
        cf.ksign = sh.mutate_coupling_sign ? -1.0 : 1.0;
        phi0 = P::load(p0v);
    }

    static void run_adaptive(const majorana::OdeParams& sh,
                             const LaneParams* lanes, SampleOutcome* out,
                             std::vector<majorana::TracePoint>* trace) {
        const double atol = sh.abs_tol;
        const double rtol = sh.rel_tol;
        const double span = sh.tau_end - sh.tau_start;

        Coeffs cf;
        P phi0;
        init_coeffs(sh, lanes, cf, phi0);

        DenseCursor tail;
        tail.start = sh.tail_start;
        tail.count = sh.tail_points;
        tail.step = (sh.tau_end - sh.tail_start) / sh.tail_points;
        tail.last = sh.tau_end;
        P tail_next = tail.next_tau_pack();

        DenseCursor trc;
        P trc_next = P::broadcast(huge);
        const bool tracing = trace && W == 1;
        if (tracing) {
            trc.start = sh.tau_start;
            trc.count = sh.trace_points;
            trc.step = span / sh.trace_points;
            trc.last = sh.tau_end;
            trc_next = trc.next_tau_pack();
            trace->clear();
            trace->reserve(sh.trace_points + 1);
            trace->push_back({sh.tau_start, {1.0, 0.0}});
        }

        double tail_sum[W] = {0}, tail_sumsq[W] = {0}, max_abs_pt[W] = {0};
        int tail_n[W] = {0};
        Status status[W];
        double tau_stop[W] = {0};
        for (int i = 0; i < W; ++i) status[i] = Status::Ok;

        P tau = P::broadcast(sh.tau_start);
        State y = {P::broadcast(1.0), P::zero(), P::zero(), P::zero()};
        P max_abs2 = P::broadcast(1.0);

        State s1 = deriv(tau, y, cf, phi0);
        P h = initial_step(tau, y, s1, cf, phi0, span, atol, rtol);
        P facold = P::broadcast(1e-4);
        Mask reject = cmp_lt(P::broadcast(1.0), P::zero());  // all false
        Mask active = cmp_lt(P::zero(), P::broadcast(1.0));  // all true
        P attempts = P::zero();
        const P tau_end = P::broadcast(sh.tau_end);
        const P max_steps = P::broadcast(static_cast<double>(sh.max_steps));

        while (any(active)) {
            attempts = attempts + select(active, P::broadcast(1.0), P::zero());
            Mask exhausted = active && cmp_gt(attempts, max_steps);
            if (any(exhausted)) {
                for (int i = 0; i < W; ++i) {
                    if (exhausted.lane(i)) {
                        status[i] = Status::MaxSteps;
                        tau_stop[i] = tau.lane(i);
                    }
                }
                active = active && !exhausted;
                if (!any(active)) break;
            }

            // Clamp the final step exactly onto tau_end.
            P rem = tau_end - tau;
            Mask final_step = cmp_le(rem, h);
            h = select(final_step, rem, h);

            Mask underflow =
                active && cmp_le(abs(h) * P::broadcast(0.1),
                                 abs(tau) * P::broadcast(dp5::uround));
            if (any(underflow)) {
                for (int i = 0; i < W; ++i) {
                    if (underflow.lane(i)) {
                        status[i] = Status::StepUnderflow;
                        tau_stop[i] = tau.lane(i);
                    }
                }
                active = active && !underflow;
                if (!any(active)) break;
            }

            // Dormand-Prince stages.
            using B = P;
            auto bc = [](double x) { return B::broadcast(x); };
            State yt, s2, s3, s4, s5, s6, s7, ysol;
            for (int i = 0; i < 4; ++i)
                yt[i] = y[i] + h * (bc(dp5::a21) * s1[i]);
            s2 = deriv(tau + bc(dp5::c2) * h, yt, cf, phi0);
            for (int i = 0; i < 4; ++i)
                yt[i] = y[i] + h * (bc(dp5::a31) * s1[i] + bc(dp5::a32) * s2[i]);
            s3 = deriv(tau + bc(dp5::c3) * h, yt, cf, phi0);
            for (int i = 0; i < 4; ++i)
                yt[i] = y[i] + h * (bc(dp5::a41) * s1[i] + bc(dp5::a42) * s2[i] +
                                    bc(dp5::a43) * s3[i]);
            s4 = deriv(tau + bc(dp5::c4) * h, yt, cf, phi0);
            for (int i = 0; i < 4; ++i)
                yt[i] = y[i] + h * (bc(dp5::a51) * s1[i] + bc(dp5::a52) * s2[i] +
                                    bc(dp5::a53) * s3[i] + bc(dp5::a54) * s4[i]);
            s5 = deriv(tau + bc(dp5::c5) * h, yt, cf, phi0);
            for (int i = 0; i < 4; ++i)
                yt[i] = y[i] + h * (bc(dp5::a61) * s1[i] + bc(dp5::a62) * s2[i] +
                                    bc(dp5::a63) * s3[i] + bc(dp5::a64) * s4[i] +
                                    bc(dp5::a65) * s5[i]);
            s6 = deriv(tau + h, yt, cf, phi0);
            for (int i = 0; i < 4; ++i)
                ysol[i] = y[i] + h * (bc(dp5::a71) * s1[i] + bc(dp5::a73) * s3[i] +
                                      bc(dp5::a74) * s4[i] + bc(dp5::a75) * s5[i] +
                                      bc(dp5::a76) * s6[i]);
            s7 = deriv(tau + h, ysol, cf, phi0);

            State errv, sc;
            for (int i = 0; i < 4; ++i) {
                errv[i] = h * (bc(dp5::e1) * s1[i] + bc(dp5::e3) * s3[i] +
                               bc(dp5::e4) * s4[i] + bc(dp5::e5) * s5[i] +
                               bc(dp5::e6) * s6[i] + bc(dp5::e7) * s7[i]);
                sc[i] = bc(atol) + bc(rtol) * max(abs(y[i]), abs(ysol[i]));
            }
            P err = scaled_rms(errv, sc);

            Mask blown = active && !is_finite(err);
            if (any(blown)) {
                for (int i = 0; i < W; ++i) {
                    if (blown.lane(i)) {
                        status[i] = Status::NonFinite;
                        tau_stop[i] = tau.lane(i);
                    }
                }
                active = active && !blown;
                if (!any(active)) break;
            }

            // PI controller; candidate steps for both outcomes.
            P fac11 = fast_pow_pos(err, dp5::expo1);
            P fac = fac11 / fast_pow_pos(facold, dp5::beta);
            fac = max(bc(dp5::facc2), min(bc(dp5::facc1), fac / bc(dp5::safe)));
            P h_acc = h / fac;
            h_acc = min(h_acc, bc(span));
            h_acc = select(reject, min(h_acc, h), h_acc);
            P h_rej = h / min(bc(dp5::facc1), fac11 / bc(dp5::safe));

            Mask accept = cmp_le(err, bc(1.0));
            Mask commit = active && accept;
            P tau_next = select(final_step, tau_end, tau + h);

            // Tail / trace sampling needs the pre-step state, so handle it
            // before committing. Dense coefficients are only formed when a
            // committed lane actually crosses a pending grid point.
            Mask tail_hit_m = commit && cmp_le(tail_next, tau_next);
            Mask trc_hit_m = commit && cmp_le(trc_next, tau_next);
            if (any(tail_hit_m) || (tracing && any(trc_hit_m))) {
                const bool tail_hit = any(tail_hit_m);
                const bool trace_hit = tracing && any(trc_hit_m);
                // Continuous extension for f (components 0 and 1).
                double rc[5][2][W];
                for (int comp = 0; comp < 2; ++comp) {
                    P dy = ysol[comp] - y[comp];
                    P hk1 = h * s1[comp];
                    P bspl = hk1 - dy;
                    P r5 = h * (bc(dp5::d1) * s1[comp] + bc(dp5::d3) * s3[comp] +
                                bc(dp5::d4) * s4[comp] + bc(dp5::d5) * s5[comp] +
                                bc(dp5::d6) * s6[comp] + bc(dp5::d7) * s7[comp]);
                    y[comp].store(rc[0][comp]);
                    dy.store(rc[1][comp]);
                    bspl.store(rc[2][comp]);
                    (dy - (h * s7[comp]) - bspl).store(rc[3][comp]);
                    r5.store(rc[4][comp]);
                }
                double tau_arr[W], h_arr[W], t1_arr[W];
                tau.store(tau_arr);
                h.store(h_arr);
                tau_next.store(t1_arr);
                for (int i = 0; i < W; ++i) {
                    if (tail_hit && tail_hit_m.lane(i)) {
                        drain_cursor(tail, i, tau_arr[i], h_arr[i], t1_arr[i],
                                     rc,
                                     [&](double, double fre, double fim) {
                                         double af = std::sqrt(fre * fre +
                                                               fim * fim);
                                         tail_sum[i] += af;
                                         tail_sumsq[i] += af * af;
                                         ++tail_n[i];
                                         if (af > max_abs_pt[i])
                                             max_abs_pt[i] = af;
                                     });
                    }
                    if (trace_hit && trc_hit_m.lane(i)) {
                        drain_cursor(trc, i, tau_arr[i], h_arr[i], t1_arr[i],
                                     rc,
                                     [&](double tg, double fre, double fim) {
                                         trace->push_back({tg, {fre, fim}});
                                     });
                    }
                }
                if (tail_hit) tail_next = tail.next_tau_pack();
                if (trace_hit) trc_next = trc.next_tau_pack();
            }

            // Commit accepted lanes.
            tau = select(commit, tau_next, tau);
            for (int i = 0; i < 4; ++i) y[i] = select(commit, ysol[i], y[i]);
            for (int i = 0; i < 4; ++i) s1[i] = select(commit, s7[i], s1[i]);
            facold = select(commit, max(err, bc(1e-4)), facold);
            h = select(commit, h_acc, select(active, h_rej, h));
            reject = (reject || (active && !accept)) && !commit;

            // Track |f|^2 at accepted step ends.
            P f2 = ysol[0] * ysol[0] + ysol[1] * ysol[1];
            max_abs2 = select(commit, max(max_abs2, f2), max_abs2);

            Mask done = commit && final_step;
            active = active && !done;
        }

        double max2_arr[W];
        max_abs2.store(max2_arr);
        for (int i = 0; i < W; ++i) {
            SampleOutcome& o = out[i];
            o.status = status[i];
            o.tau_reached = status[i] == Status::Ok ? sh.tau_end : tau_stop[i];
            o.n_steps = static_cast<long>(attempts.lane(i));
            o.max_abs_f = std::max(std::sqrt(max2_arr[i]), max_abs_pt[i]);
            if (tail_n[i] > 0) {
                const double mean = tail_sum[i] / tail_n[i];
                const double var = tail_sumsq[i] / tail_n[i] - mean * mean;
                o.f_final_mag = mean;
                o.tail_std = var > 0 ? std::sqrt(var) : 0.0;
            } else {
                o.f_final_mag = 0;
                o.tail_std = 0;
            }
        }
    }

  private:
    // Evaluates the continuous extension at every pending grid point inside
    // (t0, t1] for one lane and hands (tau, Re f, Im f) to the sink.
    template <class Sink>
    static void drain_cursor(DenseCursor& cur, int lane, double t0, double hs,
                             double t1, const double rc[5][2][W], Sink&& sink) {
        while (cur.next[lane] < cur.count) {
            const double tg = cur.point(cur.next[lane]);
            if (tg > t1) break;
            const double th = (tg - t0) / hs;
            const double th1 = 1.0 - th;
            double fv[2];
            for (int comp = 0; comp < 2; ++comp) {
                fv[comp] =
                    rc[0][comp][lane] +
                    th * (rc[1][comp][lane] +
                          th1 * (rc[2][comp][lane] +
                                 th * (rc[3][comp][lane] +
                                       th1 * rc[4][comp][lane])));
            }
            sink(tg, fv[0], fv[1]);
            ++cur.next[lane];
        }
    }
};

template <class P>
void integrate_block_impl(const majorana::OdeParams& shared,
                          std::span<const LaneParams> lanes,
                          std::span<SampleOutcome> out) {
    constexpr int W = P::width;
    LaneParams padded[W];
    SampleOutcome res[W];
    for (std::size_t base = 0; base < lanes.size(); base += W) {
        const std::size_t n = std::min<std::size_t>(W, lanes.size() - base);
        for (std::size_t i = 0; i < W; ++i) {
            padded[i] = lanes[base + std::min(i, n - 1)];
        }
        FlightKernel<P>::run(shared, padded, res, nullptr);
        for (std::size_t i = 0; i < n; ++i) out[base + i] = res[i];
    }
}

}  // namespace cqd::kernels
