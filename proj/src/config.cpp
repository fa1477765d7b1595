// SPDX-License-Identifier: Apache-2.0
#include "cqd/config.hpp"

#include <stdexcept>

namespace cqd {

void RunConfig::validate() const {
    if (currents.empty()) {
        throw std::domain_error("currents must be non-empty");
    }
    for (double I : currents) {
        if (!(I > 0.0)) {
            throw std::domain_error("currents must all be > 0");
        }
    }
    if (!(velocity > 0.0)) throw std::domain_error("velocity must be > 0");
    if (!(z_a > 0.0)) throw std::domain_error("z_a must be > 0");
    if (!(B_r > 0.0)) throw std::domain_error("B_r must be > 0");
    if (n_samples < 1) throw std::domain_error("n_samples must be >= 1");
    if (!(tau_start < tail_start && tail_start < tau_end)) {
        throw std::domain_error(
            "window must satisfy tau_start < tail_start < tau_end");
    }
    if (tail_points < 100) {
        throw std::domain_error("tail_points must be >= 100");
    }
    if (!(rel_tol > 0.0)) throw std::domain_error("rel_tol must be > 0");
    if (!(abs_tol > 0.0)) throw std::domain_error("abs_tol must be > 0");
    if (max_steps < 1) throw std::domain_error("max_steps must be >= 1");
    if (fixed_steps < 100) {
        throw std::domain_error("fixed_steps must be >= 100");
    }
    if (!constants.all_positive()) {
        throw std::domain_error("physical constants must all be > 0");
    }
}

}  // namespace cqd
