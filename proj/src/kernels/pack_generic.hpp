// SPDX-License-Identifier: Apache-2.0
//
// Portable element-wise double packs. Every operation maps to one IEEE
// correctly-rounded scalar operation per lane, so a lane of any Pack
// computes bit-identical results to Pack<1> running the same code.
#pragma once

#include <array>
#include <cmath>

namespace cqd::kernels {

template <int W>
struct GenericMask {
    std::array<bool, W> m;

    friend GenericMask operator&&(GenericMask a, GenericMask b) {
        for (int i = 0; i < W; ++i) a.m[i] = a.m[i] && b.m[i];
        return a;
    }
    friend GenericMask operator||(GenericMask a, GenericMask b) {
        for (int i = 0; i < W; ++i) a.m[i] = a.m[i] || b.m[i];
        return a;
    }
    GenericMask operator!() const {
        GenericMask r;
        for (int i = 0; i < W; ++i) r.m[i] = !m[i];
        return r;
    }
    bool lane(int i) const { return m[i]; }
};

template <int W>
struct GenericPack {
    static constexpr int width = W;
    using Mask = GenericMask<W>;
    std::array<double, W> v;

    static GenericPack broadcast(double x) {
        GenericPack p;
        p.v.fill(x);
        return p;
    }
    static GenericPack zero() { return broadcast(0.0); }
    static GenericPack load(const double* src) {
        GenericPack p;
        for (int i = 0; i < W; ++i) p.v[i] = src[i];
        return p;
    }
    void store(double* dst) const {
        for (int i = 0; i < W; ++i) dst[i] = v[i];
    }
    double lane(int i) const { return v[i]; }
    void set_lane(int i, double x) { v[i] = x; }

    friend GenericPack operator+(GenericPack a, GenericPack b) {
        for (int i = 0; i < W; ++i) a.v[i] += b.v[i];
        return a;
    }
    friend GenericPack operator-(GenericPack a, GenericPack b) {
        for (int i = 0; i < W; ++i) a.v[i] -= b.v[i];
        return a;
    }
    friend GenericPack operator*(GenericPack a, GenericPack b) {
        for (int i = 0; i < W; ++i) a.v[i] *= b.v[i];
        return a;
    }
    friend GenericPack operator/(GenericPack a, GenericPack b) {
        for (int i = 0; i < W; ++i) a.v[i] /= b.v[i];
        return a;
    }
    GenericPack operator-() const {
        GenericPack r;
        for (int i = 0; i < W; ++i) r.v[i] = -v[i];
        return r;
    }
};

template <int W>
inline GenericPack<W> sqrt(GenericPack<W> a) {
    for (int i = 0; i < W; ++i) a.v[i] = std::sqrt(a.v[i]);
    return a;
}

template <int W>
inline GenericPack<W> abs(GenericPack<W> a) {
    for (int i = 0; i < W; ++i) a.v[i] = std::fabs(a.v[i]);
    return a;
}

// min/max mirror the x86 vector semantics: pick b when a is not smaller.
template <int W>
inline GenericPack<W> min(GenericPack<W> a, GenericPack<W> b) {
    for (int i = 0; i < W; ++i) a.v[i] = a.v[i] < b.v[i] ? a.v[i] : b.v[i];
    return a;
}

template <int W>
inline GenericPack<W> max(GenericPack<W> a, GenericPack<W> b) {
    for (int i = 0; i < W; ++i) a.v[i] = a.v[i] > b.v[i] ? a.v[i] : b.v[i];
    return a;
}

template <int W>
inline GenericMask<W> cmp_lt(GenericPack<W> a, GenericPack<W> b) {
    GenericMask<W> r;
    for (int i = 0; i < W; ++i) r.m[i] = a.v[i] < b.v[i];
    return r;
}

template <int W>
inline GenericMask<W> cmp_le(GenericPack<W> a, GenericPack<W> b) {
    GenericMask<W> r;
    for (int i = 0; i < W; ++i) r.m[i] = a.v[i] <= b.v[i];
    return r;
}

template <int W>
inline GenericMask<W> cmp_gt(GenericPack<W> a, GenericPack<W> b) {
    GenericMask<W> r;
    for (int i = 0; i < W; ++i) r.m[i] = a.v[i] > b.v[i];
    return r;
}

template <int W>
inline GenericPack<W> select(GenericMask<W> m, GenericPack<W> a,
                             GenericPack<W> b) {
    for (int i = 0; i < W; ++i) b.v[i] = m.m[i] ? a.v[i] : b.v[i];
    return b;
}

template <int W>
inline bool any(GenericMask<W> m) {
    for (int i = 0; i < W; ++i)
        if (m.m[i]) return true;
    return false;
}

template <int W>
inline GenericMask<W> is_finite(GenericPack<W> a) {
    GenericMask<W> r;
    for (int i = 0; i < W; ++i) r.m[i] = std::isfinite(a.v[i]);
    return r;
}

}  // namespace cqd::kernels
