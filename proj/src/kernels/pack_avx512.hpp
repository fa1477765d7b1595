// SPDX-License-Identifier: Apache-2.0
//
// AVX-512 8-lane double pack. Only included from the TU compiled with
// -mavx512f; callers must gate on runtime CPU support.
#pragma once

#include <immintrin.h>

#include <cmath>

namespace cqd::kernels {

struct Avx512Pack {
    static constexpr int width = 8;
    __m512d v;

    struct Mask {
        __mmask8 m;
        friend Mask operator&&(Mask a, Mask b) {
            return {static_cast<__mmask8>(a.m & b.m)};
        }
        friend Mask operator||(Mask a, Mask b) {
            return {static_cast<__mmask8>(a.m | b.m)};
        }
        Mask operator!() const { return {static_cast<__mmask8>(~m & 0xff)}; }
        bool lane(int i) const { return (m >> i) & 1; }
    };

    static Avx512Pack broadcast(double x) { return {_mm512_set1_pd(x)}; }
    static Avx512Pack zero() { return {_mm512_setzero_pd()}; }
    static Avx512Pack load(const double* src) {
        return {_mm512_loadu_pd(src)};
    }
    void store(double* dst) const { _mm512_storeu_pd(dst, v); }

    double lane(int i) const {
        alignas(64) double tmp[8];
        _mm512_store_pd(tmp, v);
        return tmp[i];
    }
    void set_lane(int i, double x) {
        alignas(64) double tmp[8];
        _mm512_store_pd(tmp, v);
        tmp[i] = x;
        v = _mm512_load_pd(tmp);
    }

    friend Avx512Pack operator+(Avx512Pack a, Avx512Pack b) {
        return {_mm512_add_pd(a.v, b.v)};
    }
    friend Avx512Pack operator-(Avx512Pack a, Avx512Pack b) {
        return {_mm512_sub_pd(a.v, b.v)};
    }
    friend Avx512Pack operator*(Avx512Pack a, Avx512Pack b) {
        return {_mm512_mul_pd(a.v, b.v)};
    }
    friend Avx512Pack operator/(Avx512Pack a, Avx512Pack b) {
        return {_mm512_div_pd(a.v, b.v)};
    }
    Avx512Pack operator-() const {
        return {_mm512_sub_pd(_mm512_setzero_pd(), v)};
    }
};

inline Avx512Pack sqrt(Avx512Pack a) { return {_mm512_sqrt_pd(a.v)}; }

inline Avx512Pack abs(Avx512Pack a) { return {_mm512_abs_pd(a.v)}; }

inline Avx512Pack min(Avx512Pack a, Avx512Pack b) {
    return {_mm512_min_pd(a.v, b.v)};
}

inline Avx512Pack max(Avx512Pack a, Avx512Pack b) {
    return {_mm512_max_pd(a.v, b.v)};
}

inline Avx512Pack::Mask cmp_lt(Avx512Pack a, Avx512Pack b) {
    return {_mm512_cmp_pd_mask(a.v, b.v, _CMP_LT_OQ)};
}

inline Avx512Pack::Mask cmp_le(Avx512Pack a, Avx512Pack b) {
    return {_mm512_cmp_pd_mask(a.v, b.v, _CMP_LE_OQ)};
}

inline Avx512Pack::Mask cmp_gt(Avx512Pack a, Avx512Pack b) {
    return {_mm512_cmp_pd_mask(a.v, b.v, _CMP_GT_OQ)};
}

inline Avx512Pack select(Avx512Pack::Mask m, Avx512Pack a, Avx512Pack b) {
    return {_mm512_mask_blend_pd(m.m, b.v, a.v)};
}

inline bool any(Avx512Pack::Mask m) { return m.m != 0; }

inline Avx512Pack::Mask is_finite(Avx512Pack a) {
    return {_mm512_cmp_pd_mask(abs(a).v, _mm512_set1_pd(HUGE_VAL),
                               _CMP_LT_OQ)};
}

}  // namespace cqd::kernels
