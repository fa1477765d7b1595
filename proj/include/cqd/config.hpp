// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "cqd/constants.hpp"

namespace cqd {

/// Angular distribution of the initial nuclear (co-quantum) orientation.
enum class Distribution { Isotropic, Anisotropic };

/// Which collapsed state counts as a spin flip when aggregating.
/// The two conventions are complements of each other.
enum class FlipConvention { CollapseUpIsFlip, CollapseDownIsFlip };

/// Policy when a single sample's integration fails mid-sweep.
enum class ErrorPolicy { Abort, SkipAndRecord };

/// Full description of one Monte Carlo experiment run.
struct RunConfig {
    std::vector<double> currents =  // wire currents, A
        {0.01, 0.02, 0.03, 0.05, 0.1, 0.2, 0.3, 0.5};
    double velocity = 800.0;   // atom speed, m/s
    double z_a = 1.05e-4;      // beam-to-wire vertical distance, m
    double B_r = 0.42e-4;      // remnant field magnitude, T
    int n_samples = 20000;     // Monte Carlo samples per current

    Distribution distribution = Distribution::Anisotropic;
    // Default determined empirically against the 1933 dataset; see README.
    FlipConvention flip_convention = FlipConvention::CollapseDownIsFlip;

    double tau_start = -30.0;  // dimensionless integration window
    double tau_end = 60.0;
    double tail_start = 52.0;  // |f| is averaged over (tail_start, tau_end]
    int tail_points = 187;     // uniform grid size for the tail average

    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    long max_steps = 5'000'000;   // per-sample step budget
    bool fixed_rk4 = false;       // cross-check integrator instead of the
    long fixed_steps = 2'000'000; // adaptive pair, with this step count

    std::uint64_t seed = 1;
    ErrorPolicy error_policy = ErrorPolicy::Abort;

    PhysicalConstants constants{};

    /// Throws std::domain_error naming the violated constraint.
    void validate() const;
};

}  // namespace cqd
