// SPDX-License-Identifier: Apache-2.0
//
// Vectorizable sincos / pow over packs. Classic Cody-Waite reduction and
// fdlibm-style kernels, written entirely in pack arithmetic so every lane
// of every pack width computes the same IEEE operation sequence. Accuracy
// is a few ulp over the argument ranges the integrator produces
// (|x| <= ~1e4 for sincos), far below the integration tolerances.
#pragma once

#include <cmath>
#include <cstdint>

namespace cqd::kernels {

namespace pmath {

// 1.5 * 2^52; adding and subtracting rounds to nearest integer.
inline constexpr double round_magic = 6755399441055744.0;

inline constexpr double inv_pio2 = 6.36619772367581382433e-01;
inline constexpr double pio2_1 = 1.57079632673412561417e+00;
inline constexpr double pio2_1t = 6.07710050650619224932e-11;

inline constexpr double S1 = -1.66666666666666324348e-01;
inline constexpr double S2 = 8.33333333332248946124e-03;
inline constexpr double S3 = -1.98412698298579493134e-04;
inline constexpr double S4 = 2.75573137070700676789e-06;
inline constexpr double S5 = -2.50507602534068634195e-08;
inline constexpr double S6 = 1.58969099521155010221e-10;

inline constexpr double C1 = 4.16666666666666019037e-02;
inline constexpr double C2 = -1.38888888888741095749e-03;
inline constexpr double C3 = 2.48015872894767294178e-05;
inline constexpr double C4 = -2.75573143513906633035e-07;
inline constexpr double C5 = 2.08757232129817482790e-09;
inline constexpr double C6 = -1.13596475577881948265e-11;

inline constexpr double ln2_hi = 6.93147180369123816490e-01;
inline constexpr double ln2_lo = 1.90821492927058770002e-10;
inline constexpr double inv_ln2 = 1.44269504088896338700e+00;
inline constexpr double sqrt2_half = 0.70710678118654752440;

inline constexpr double Lg1 = 6.666666666666735130e-01;
inline constexpr double Lg2 = 3.999999999940941908e-01;
inline constexpr double Lg3 = 2.857142874366239149e-01;
inline constexpr double Lg4 = 2.222219843214978396e-01;
inline constexpr double Lg5 = 1.818357216161805012e-01;
inline constexpr double Lg6 = 1.531383769920937332e-01;
inline constexpr double Lg7 = 1.479819860511658591e-01;

}  // namespace pmath

/// sin and cos for |x| up to ~2^30; two-term Cody-Waite reduction keeps
/// the reduced argument accurate to well under an ulp for the |x| <= 1e4
/// range used here.
template <class P>
inline void fast_sincos(P x, P& s_out, P& c_out) {
    using namespace pmath;

    const P magic = P::broadcast(round_magic);
    P fn = x * P::broadcast(inv_pio2) + magic - magic;

    // r = x - fn * pi/2; fn * pio2_1 is exact for the |x| range in use,
    // and pio2_1t carries the remainder of pi/2 to full precision.
    P r = x - fn * P::broadcast(pio2_1);
    r = r - fn * P::broadcast(pio2_1t);

    P z = r * r;
    // sin kernel
    P sp = P::broadcast(S6);
    sp = sp * z + P::broadcast(S5);
    sp = sp * z + P::broadcast(S4);
    sp = sp * z + P::broadcast(S3);
    sp = sp * z + P::broadcast(S2);
    sp = sp * z + P::broadcast(S1);
    P sin_r = r + (r * z) * sp;
    // cos kernel
    P cp = P::broadcast(C6);
    cp = cp * z + P::broadcast(C5);
    cp = cp * z + P::broadcast(C4);
    cp = cp * z + P::broadcast(C3);
    cp = cp * z + P::broadcast(C2);
    cp = cp * z + P::broadcast(C1);
    P cos_r = P::broadcast(1.0) - P::broadcast(0.5) * z + (z * z) * cp;

    // Quadrant q = fn mod 4, in pack arithmetic: fn holds small integers
    // exactly, and the magic-add rounds fn/4 to the nearest integer, so
    // r4 lands in {-2,...,2}; -2 and -1 fold up by 4.
    P r4 = fn - P::broadcast(4.0) * (fn * P::broadcast(0.25) + magic - magic);
    P q = r4 + select(cmp_lt(r4, P::broadcast(-0.5)), P::broadcast(4.0),
                      P::zero());
    P half_q_rounded = q * P::broadcast(0.5) + magic - magic;
    P parity = abs(q - P::broadcast(2.0) * half_q_rounded);
    const auto swap_m = cmp_gt(parity, P::broadcast(0.5));
    const auto neg_sin = cmp_gt(q, P::broadcast(1.5));  // q in {2, 3}
    const auto neg_cos = cmp_gt(q, P::broadcast(0.5)) &&
                         cmp_lt(q, P::broadcast(2.5));  // q in {1, 2}
    const P pos1 = P::broadcast(1.0);
    const P neg1 = P::broadcast(-1.0);
    s_out = select(swap_m, cos_r, sin_r) * select(neg_sin, neg1, pos1);
    c_out = select(swap_m, sin_r, cos_r) * select(neg_cos, neg1, pos1);
}

/// Natural log for strictly positive finite x (per-lane frexp is an exact
/// bit operation).
template <class P>
inline P fast_log(P x) {
    using namespace pmath;
    constexpr int W = P::width;
    double xa[W], ma[W], ka[W];
    x.store(xa);
    for (int i = 0; i < W; ++i) {
        int e = 0;
        double m = std::frexp(xa[i], &e);  // m in [0.5, 1)
        if (m < sqrt2_half) {
            m *= 2.0;
            e -= 1;
        }
        ma[i] = m;
        ka[i] = static_cast<double>(e);
    }
    P m = P::load(ma);
    P k = P::load(ka);

    P f = m - P::broadcast(1.0);
    P s = f / (P::broadcast(2.0) + f);
    P z = s * s;
    P w = z * z;
    P t1 = w * (P::broadcast(Lg2) +
                w * (P::broadcast(Lg4) + w * P::broadcast(Lg6)));
    P t2 = z * (P::broadcast(Lg1) +
                w * (P::broadcast(Lg3) +
                     w * (P::broadcast(Lg5) + w * P::broadcast(Lg7))));
    P R = t1 + t2;
    P hfsq = P::broadcast(0.5) * f * f;
    P lnm = f - (hfsq - s * (hfsq + R));
    return k * P::broadcast(ln2_hi) + lnm + k * P::broadcast(ln2_lo);
}

/// exp for |y| <= ~700.
template <class P>
inline P fast_exp(P y) {
    using namespace pmath;
    constexpr int W = P::width;
    const P magic = P::broadcast(round_magic);
    P kd = y * P::broadcast(inv_ln2) + magic - magic;
    P r = y - kd * P::broadcast(ln2_hi);
    r = r - kd * P::broadcast(ln2_lo);

    // Taylor series in the reduced range |r| <= 0.347.
    P acc = P::broadcast(1.0 / 6227020800.0);  // 1/13!
    acc = acc * r + P::broadcast(1.0 / 479001600.0);
    acc = acc * r + P::broadcast(1.0 / 39916800.0);
    acc = acc * r + P::broadcast(1.0 / 3628800.0);
    acc = acc * r + P::broadcast(1.0 / 362880.0);
    acc = acc * r + P::broadcast(1.0 / 40320.0);
    acc = acc * r + P::broadcast(1.0 / 5040.0);
    acc = acc * r + P::broadcast(1.0 / 720.0);
    acc = acc * r + P::broadcast(1.0 / 120.0);
    acc = acc * r + P::broadcast(1.0 / 24.0);
    acc = acc * r + P::broadcast(1.0 / 6.0);
    acc = acc * r + P::broadcast(0.5);
    acc = acc * r + P::broadcast(1.0);
    acc = acc * r + P::broadcast(1.0);

    double ka[W], ra[W];
    kd.store(ka);
    acc.store(ra);
    for (int i = 0; i < W; ++i) {
        ra[i] = std::ldexp(ra[i], static_cast<int>(ka[i]));
    }
    return P::load(ra);
}

/// x^e for x >= 0 (x = 0 maps to 0; used by the step controller).
template <class P>
inline P fast_pow_pos(P x, double e) {
    const auto zero = cmp_le(x, P::zero());
    P safe_x = select(zero, P::broadcast(1.0), x);
    P y = fast_exp(fast_log(safe_x) * P::broadcast(e));
    return select(zero, P::zero(), y);
}

}  // namespace cqd::kernels
