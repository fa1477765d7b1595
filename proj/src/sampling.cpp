// SPDX-License-Identifier: Apache-2.0
#include "cqd/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cqd::sampling {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * std::numbers::pi;

// splitmix64 finalizer; full-avalanche 64-bit mix.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t current_index,
                           std::uint64_t sample_index) {
    // Hash the triple into an independent substream state.
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ (current_index + 0x632be59bd9b4e019ull));
    h = mix64(h ^ (sample_index + 0x9e6c63d0876a9a47ull));
    state_ = h;
}

std::uint64_t SampleStream::next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double SampleStream::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double theta_anisotropic_from_unit(double zeta) {
    return 2.0 * std::asin(std::pow(zeta, 0.25));
}

double theta_isotropic_from_unit(double zeta) {
    return std::acos(1.0 - 2.0 * zeta);
}

NuclearOrientation sample_anisotropic(SampleStream& stream) {
    const double zeta1 = stream.next_unit();
    const double zeta2 = stream.next_unit();
    return {theta_anisotropic_from_unit(zeta1), two_pi * zeta2};
}

NuclearOrientation sample_isotropic(SampleStream& stream) {
    const double zeta1 = stream.next_unit();
    const double zeta2 = stream.next_unit();
    return {theta_isotropic_from_unit(zeta1), two_pi * zeta2};
}

NuclearOrientation sample(SampleStream& stream, Distribution distribution) {
    return distribution == Distribution::Anisotropic
               ? sample_anisotropic(stream)
               : sample_isotropic(stream);
}

double pdf(double theta_n, Distribution distribution) {
    if (!(theta_n >= 0.0 && theta_n <= pi)) {
        throw std::domain_error("theta_n must lie in [0, pi]");
    }
    if (distribution == Distribution::Anisotropic) {
        return (1.0 - std::cos(theta_n)) / (4.0 * pi);
    }
    return 1.0 / (4.0 * pi);
}

}  // namespace cqd::sampling
