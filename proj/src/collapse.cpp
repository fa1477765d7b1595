// SPDX-License-Identifier: Apache-2.0
#include "cqd/collapse.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cqd::collapse {

CollapsedState branch(double theta_ef, double theta_n0) {
    constexpr double pi = std::numbers::pi;
    if (!(theta_ef >= 0.0 && theta_ef <= pi)) {
        throw std::domain_error("theta_ef must lie in [0, pi]");
    }
    if (!(theta_n0 >= 0.0 && theta_n0 <= pi)) {
        throw std::domain_error("theta_n0 must lie in [0, pi]");
    }
    return theta_ef < theta_n0 ? CollapsedState::Up : CollapsedState::Down;
}

FlipStatistics flip_fraction(std::span<const CollapsedState> outcomes,
                             FlipConvention convention) {
    if (outcomes.empty()) {
        throw std::domain_error("outcomes must be non-empty");
    }
    const CollapsedState flip_state =
        convention == FlipConvention::CollapseUpIsFlip ? CollapsedState::Up
                                                       : CollapsedState::Down;
    FlipStatistics s;
    s.n_total = static_cast<long>(outcomes.size());
    for (CollapsedState o : outcomes) {
        if (o == flip_state) ++s.n_flip;
    }
    s.fraction = static_cast<double>(s.n_flip) / static_cast<double>(s.n_total);
    s.std_err = std::sqrt(s.fraction * (1.0 - s.fraction) /
                          static_cast<double>(s.n_total));
    return s;
}

}  // namespace cqd::collapse
