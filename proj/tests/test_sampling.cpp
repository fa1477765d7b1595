// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "cqd/sampling.hpp"

using namespace cqd;
using namespace cqd::sampling;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

double aniso_cdf(double theta) {
    const double c = 1.0 - std::cos(theta);
    return c * c / 4.0;
}

double iso_cdf(double theta) { return (1.0 - std::cos(theta)) / 2.0; }

// Composite Simpson over [0, pi].
template <class F>
double simpson(F f, int n) {
    const double h = pi / n;
    double acc = f(0.0) + f(pi);
    for (int i = 1; i < n; ++i) acc += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

double ks_statistic(std::vector<double>& thetas, bool aniso) {
    std::sort(thetas.begin(), thetas.end());
    const auto n = thetas.size();
    double ks = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double cdf = aniso ? aniso_cdf(thetas[i]) : iso_cdf(thetas[i]);
        ks = std::max(ks, std::fabs(cdf - (i + 1.0) / n));
        ks = std::max(ks, std::fabs(cdf - static_cast<double>(i) / n));
    }
    return ks;
}

}  // namespace

TEST_SUITE_BEGIN("sampling");

TEST_CASE("inverse CDF endpoints and fixed points") {
    CHECK(theta_anisotropic_from_unit(0.0) == 0.0);
    CHECK(theta_anisotropic_from_unit(1.0) == Approx(pi).epsilon(1e-15));
    // (1/4)^(1/4) = 1/sqrt(2), so theta = 2 asin(1/sqrt 2) = pi/2
    CHECK(theta_anisotropic_from_unit(0.25) == Approx(pi / 2).epsilon(1e-14));
    CHECK(theta_isotropic_from_unit(0.5) == Approx(pi / 2).epsilon(1e-14));
    CHECK(theta_isotropic_from_unit(0.0) == 0.0);
    CHECK(theta_isotropic_from_unit(1.0) == Approx(pi).epsilon(1e-15));
}

TEST_CASE("pdf values and normalization") {
    CHECK(pdf(0.0, Distribution::Anisotropic) == 0.0);
    CHECK(pdf(pi, Distribution::Anisotropic) ==
          Approx(1.0 / (2.0 * pi)).epsilon(1e-15));
    CHECK(pdf(1.0, Distribution::Isotropic) ==
          Approx(1.0 / (4.0 * pi)).epsilon(1e-15));
    CHECK_THROWS_AS(pdf(-0.01, Distribution::Anisotropic), std::domain_error);
    CHECK_THROWS_AS(pdf(pi + 0.01, Distribution::Isotropic),
                    std::domain_error);

    for (auto d : {Distribution::Anisotropic, Distribution::Isotropic}) {
        const double total = simpson(
            [&](double th) {
                return pdf(th, d) * std::sin(th) * 2.0 * pi;
            },
            2000);
        CHECK(total == Approx(1.0).epsilon(1e-9));
    }
    // analytic first moment of cos(theta) under the anisotropic density
    const double moment = simpson(
        [&](double th) {
            return std::cos(th) * pdf(th, Distribution::Anisotropic) *
                   std::sin(th) * 2.0 * pi;
        },
        2000);
    CHECK(moment == Approx(-1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("empirical moments at a million samples") {
    const int n = 1000000;
    double sum_a = 0, sum_i = 0;
    for (int i = 0; i < n; ++i) {
        SampleStream sa(2024, 0, static_cast<unsigned>(i));
        SampleStream si(2024, 1, static_cast<unsigned>(i));
        sum_a += std::cos(sample_anisotropic(sa).theta_n0);
        sum_i += std::cos(sample_isotropic(si).theta_n0);
    }
    // var(cos) = 2/9 anisotropic, 1/3 isotropic
    CHECK(std::fabs(sum_a / n + 1.0 / 3.0) < 3.0 * std::sqrt(2.0 / 9.0 / n));
    CHECK(std::fabs(sum_i / n) < 3.0 * std::sqrt(1.0 / 3.0 / n));
}

TEST_CASE("empirical CDF matches the analytic CDF (KS)") {
    const int n = 100000;
    const double bound = 3.0 / std::sqrt(static_cast<double>(n));
    for (int mode = 0; mode < 2; ++mode) {
        std::vector<double> thetas(n);
        for (int i = 0; i < n; ++i) {
            SampleStream s(99, static_cast<unsigned>(mode),
                           static_cast<unsigned>(i));
            thetas[i] = (mode == 0 ? sample_anisotropic(s)
                                   : sample_isotropic(s))
                            .theta_n0;
        }
        CHECK(ks_statistic(thetas, mode == 0) < bound);
    }
}

TEST_CASE("azimuth is uniform and independent of the polar angle") {
    // Map each sample to (CDF(theta), phi / 2pi); under the model both are
    // Uniform(0,1) and independent, so the 8x8 occupancy is uniform.
    // Chi-square against the known uniform law: 63 dof, 99% quantile 92.01.
    const int n = 100000;
    const int bins = 8;
    int counts[bins][bins] = {};
    for (int i = 0; i < n; ++i) {
        SampleStream s(4242, 0, static_cast<unsigned>(i));
        const auto o = sample_anisotropic(s);
        const double u = aniso_cdf(o.theta_n0);
        const double v = o.phi_n0 / (2.0 * pi);
        const int bu = std::min(bins - 1, static_cast<int>(u * bins));
        const int bv = std::min(bins - 1, static_cast<int>(v * bins));
        ++counts[bu][bv];
    }
    const double expected = static_cast<double>(n) / (bins * bins);
    double chi2 = 0;
    for (auto& row : counts) {
        for (int c : row) {
            const double d = c - expected;
            chi2 += d * d / expected;
        }
    }
    CHECK(chi2 < 92.010);
}

TEST_CASE("determinism of the sample streams") {
    SampleStream a(123456789, 3, 17);
    SampleStream b(123456789, 3, 17);
    const auto oa = sample_anisotropic(a);
    const auto ob = sample_anisotropic(b);
    CHECK(oa.theta_n0 == ob.theta_n0);
    CHECK(oa.phi_n0 == ob.phi_n0);

    SUBCASE("distinct indices decorrelate") {
        SampleStream c(123456789, 3, 18);
        const auto oc = sample_anisotropic(c);
        CHECK(oc.theta_n0 != oa.theta_n0);
    }
    SUBCASE("range invariants") {
        for (int i = 0; i < 2000; ++i) {
            SampleStream s(7, 0, static_cast<unsigned>(i));
            const auto o = sample(s, i % 2 ? Distribution::Isotropic
                                           : Distribution::Anisotropic);
            CHECK(o.theta_n0 >= 0.0);
            CHECK(o.theta_n0 <= pi);
            CHECK(o.phi_n0 >= 0.0);
            CHECK(o.phi_n0 < 2.0 * pi);
        }
    }
}

TEST_SUITE_END();
