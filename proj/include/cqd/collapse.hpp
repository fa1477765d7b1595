// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "cqd/config.hpp"

namespace cqd::collapse {

/// Measured eigenstate after the branching condition is applied:
/// Up is theta_{e,D} = 0 (the +z state), Down is theta_{e,D} = pi.
enum class CollapsedState { Up, Down };

struct FlipStatistics {
    long n_total = 0;
    long n_flip = 0;
    double fraction = 0;
    double std_err = 0;  // binomial: sqrt(W (1 - W) / n)
};

/// Branching condition: the electron moment collapses toward +z when its
/// final polar angle is smaller than the co-quantum's, toward -z when it
/// is larger. The measure-zero tie goes to Down.
CollapsedState branch(double theta_ef, double theta_n0);

/// Counts flips under the given convention.
FlipStatistics flip_fraction(std::span<const CollapsedState> outcomes,
                             FlipConvention convention);

}  // namespace cqd::collapse
