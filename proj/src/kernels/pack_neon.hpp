// SPDX-License-Identifier: Apache-2.0
//
// AArch64 NEON 2-lane double pack.
#pragma once

#include <arm_neon.h>

#include <cmath>

namespace cqd::kernels {

struct NeonPack {
    static constexpr int width = 2;
    float64x2_t v;

    struct Mask {
        uint64x2_t m;
        friend Mask operator&&(Mask a, Mask b) { return {vandq_u64(a.m, b.m)}; }
        friend Mask operator||(Mask a, Mask b) { return {vorrq_u64(a.m, b.m)}; }
        Mask operator!() const {
            return {veorq_u64(m, vdupq_n_u64(~0ull))};
        }
        bool lane(int i) const {
            return (i == 0 ? vgetq_lane_u64(m, 0) : vgetq_lane_u64(m, 1)) != 0;
        }
    };

    static NeonPack broadcast(double x) { return {vdupq_n_f64(x)}; }
    static NeonPack zero() { return broadcast(0.0); }
    static NeonPack load(const double* src) { return {vld1q_f64(src)}; }
    void store(double* dst) const { vst1q_f64(dst, v); }

    double lane(int i) const {
        return i == 0 ? vgetq_lane_f64(v, 0) : vgetq_lane_f64(v, 1);
    }
    void set_lane(int i, double x) {
        if (i == 0)
            v = vsetq_lane_f64(x, v, 0);
        else
            v = vsetq_lane_f64(x, v, 1);
    }

    friend NeonPack operator+(NeonPack a, NeonPack b) {
        return {vaddq_f64(a.v, b.v)};
    }
    friend NeonPack operator-(NeonPack a, NeonPack b) {
        return {vsubq_f64(a.v, b.v)};
    }
    friend NeonPack operator*(NeonPack a, NeonPack b) {
        return {vmulq_f64(a.v, b.v)};
    }
    friend NeonPack operator/(NeonPack a, NeonPack b) {
        return {vdivq_f64(a.v, b.v)};
    }
    NeonPack operator-() const { return {vnegq_f64(v)}; }
};

inline NeonPack sqrt(NeonPack a) { return {vsqrtq_f64(a.v)}; }

inline NeonPack abs(NeonPack a) { return {vabsq_f64(a.v)}; }

// Match the x86 semantics exactly: (a < b) ? a : b and (a > b) ? a : b.
inline NeonPack min(NeonPack a, NeonPack b) {
    return {vbslq_f64(vcltq_f64(a.v, b.v), a.v, b.v)};
}

inline NeonPack max(NeonPack a, NeonPack b) {
    return {vbslq_f64(vcgtq_f64(a.v, b.v), a.v, b.v)};
}

inline NeonPack::Mask cmp_lt(NeonPack a, NeonPack b) {
    return {vcltq_f64(a.v, b.v)};
}

inline NeonPack::Mask cmp_le(NeonPack a, NeonPack b) {
    return {vcleq_f64(a.v, b.v)};
}

inline NeonPack::Mask cmp_gt(NeonPack a, NeonPack b) {
    return {vcgtq_f64(a.v, b.v)};
}

inline NeonPack select(NeonPack::Mask m, NeonPack a, NeonPack b) {
    return {vbslq_f64(m.m, a.v, b.v)};
}

inline bool any(NeonPack::Mask m) {
    return (vgetq_lane_u64(m.m, 0) | vgetq_lane_u64(m.m, 1)) != 0;
}

inline NeonPack::Mask is_finite(NeonPack a) {
    return {vcltq_f64(vabsq_f64(a.v), vdupq_n_f64(HUGE_VAL))};
}

}  // namespace cqd::kernels
