// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "cqd/config.hpp"

namespace cqd::sampling {

/// Initial co-quantum (nuclear moment) orientation.
/// theta_n0 in [0, pi], phi_n0 in [0, 2 pi).
struct NuclearOrientation {
    double theta_n0;
    double phi_n0;
};

/// A deterministic substream of uniform variates owned by one
/// (current_index, sample_index) work item. The draws are a pure function
/// of (seed, current_index, sample_index), so results do not depend on
/// scheduling or thread count.
class SampleStream {
  public:
    SampleStream(std::uint64_t seed, std::uint64_t current_index,
                 std::uint64_t sample_index);

    /// Next uniform double in [0, 1), 53-bit resolution.
    double next_unit();

    std::uint64_t next_u64();

  private:
    std::uint64_t state_;
};

/// theta = 2 asin(zeta^(1/4)): inverse CDF of p(theta, phi) = (1 - cos
/// theta) / (4 pi), the density of co-quanta that guided a collapse to the
/// up branch.
double theta_anisotropic_from_unit(double zeta);

/// theta = acos(1 - 2 zeta): inverse CDF of the uniform sphere density
/// 1 / (4 pi).
double theta_isotropic_from_unit(double zeta);

/// Draws (theta_n0, phi_n0) from the anisotropic density.
NuclearOrientation sample_anisotropic(SampleStream& stream);

/// Draws (theta_n0, phi_n0) from the isotropic density.
NuclearOrientation sample_isotropic(SampleStream& stream);

NuclearOrientation sample(SampleStream& stream, Distribution distribution);

/// Angular density in 1/sr at polar angle theta. Throws std::domain_error
/// for theta outside [0, pi].
double pdf(double theta_n, Distribution distribution);

}  // namespace cqd::sampling
