// SPDX-License-Identifier: Apache-2.0
//
// AVX2 4-lane double pack. Only included from the TU compiled with -mavx2;
// callers must gate on runtime CPU support before dispatching into it.
#pragma once

#include <immintrin.h>

#include <cmath>

namespace cqd::kernels {

struct Avx2Pack {
    static constexpr int width = 4;
    __m256d v;

    struct Mask {
        __m256d m;
        friend Mask operator&&(Mask a, Mask b) {
            return {_mm256_and_pd(a.m, b.m)};
        }
        friend Mask operator||(Mask a, Mask b) {
            return {_mm256_or_pd(a.m, b.m)};
        }
        Mask operator!() const {
            const __m256d ones = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
            return {_mm256_xor_pd(m, ones)};
        }
        bool lane(int i) const { return (_mm256_movemask_pd(m) >> i) & 1; }
    };

    static Avx2Pack broadcast(double x) { return {_mm256_set1_pd(x)}; }
    static Avx2Pack zero() { return {_mm256_setzero_pd()}; }
    static Avx2Pack load(const double* src) { return {_mm256_loadu_pd(src)}; }
    void store(double* dst) const { _mm256_storeu_pd(dst, v); }

    double lane(int i) const {
        alignas(32) double tmp[4];
        _mm256_store_pd(tmp, v);
        return tmp[i];
    }
    void set_lane(int i, double x) {
        alignas(32) double tmp[4];
        _mm256_store_pd(tmp, v);
        tmp[i] = x;
        v = _mm256_load_pd(tmp);
    }

    friend Avx2Pack operator+(Avx2Pack a, Avx2Pack b) {
        return {_mm256_add_pd(a.v, b.v)};
    }
    friend Avx2Pack operator-(Avx2Pack a, Avx2Pack b) {
        return {_mm256_sub_pd(a.v, b.v)};
    }
    friend Avx2Pack operator*(Avx2Pack a, Avx2Pack b) {
        return {_mm256_mul_pd(a.v, b.v)};
    }
    friend Avx2Pack operator/(Avx2Pack a, Avx2Pack b) {
        return {_mm256_div_pd(a.v, b.v)};
    }
    Avx2Pack operator-() const {
        return {_mm256_sub_pd(_mm256_setzero_pd(), v)};
    }
};

inline Avx2Pack sqrt(Avx2Pack a) { return {_mm256_sqrt_pd(a.v)}; }

inline Avx2Pack abs(Avx2Pack a) {
    const __m256d signbit = _mm256_set1_pd(-0.0);
    return {_mm256_andnot_pd(signbit, a.v)};
}

inline Avx2Pack min(Avx2Pack a, Avx2Pack b) {
    return {_mm256_min_pd(a.v, b.v)};
}

inline Avx2Pack max(Avx2Pack a, Avx2Pack b) {
    return {_mm256_max_pd(a.v, b.v)};
}

inline Avx2Pack::Mask cmp_lt(Avx2Pack a, Avx2Pack b) {
    return {_mm256_cmp_pd(a.v, b.v, _CMP_LT_OQ)};
}

inline Avx2Pack::Mask cmp_le(Avx2Pack a, Avx2Pack b) {
    return {_mm256_cmp_pd(a.v, b.v, _CMP_LE_OQ)};
}

inline Avx2Pack::Mask cmp_gt(Avx2Pack a, Avx2Pack b) {
    return {_mm256_cmp_pd(a.v, b.v, _CMP_GT_OQ)};
}

inline Avx2Pack select(Avx2Pack::Mask m, Avx2Pack a, Avx2Pack b) {
    return {_mm256_blendv_pd(b.v, a.v, m.m)};
}

inline bool any(Avx2Pack::Mask m) { return _mm256_movemask_pd(m.m) != 0; }

inline Avx2Pack::Mask is_finite(Avx2Pack a) {
    // finite iff |x| < inf (also rejects NaN under an ordered compare)
    const __m256d inf = _mm256_set1_pd(HUGE_VAL);
    return {_mm256_cmp_pd(abs(a).v, inf, _CMP_LT_OQ)};
}

}  // namespace cqd::kernels
