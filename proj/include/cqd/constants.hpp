// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <numbers>

namespace cqd {

/// Physical constants for a ground-state potassium atom in SI units.
///
/// Gyromagnetic ratios are stored as magnitudes; the electron's negative
/// sign is applied structurally where the dynamics need it (see
/// spinor.hpp), so every field here is strictly positive.
struct PhysicalConstants {
    double mu0 = 4.0 * std::numbers::pi * 1e-7;  // vacuum permeability, T*m/A
    double R_vdw = 2.75e-10;                     // van der Waals radius of K, m
    double mu_n = 1.977e-27;                     // nuclear magnetic moment, J/T
    double mu_e = 9.285e-24;                     // electron magnetic moment, J/T
    double gamma_e_mag = 1.761e11;               // |gamma_e|, rad/(s*T)
    double gamma_n_mag = 1.25e7;                 // |gamma_n|, rad/(s*T)

    bool all_positive() const {
        return mu0 > 0 && R_vdw > 0 && mu_n > 0 && mu_e > 0 &&
               gamma_e_mag > 0 && gamma_n_mag > 0;
    }
};

// Reduced Planck constant, J*s. Only the spinor Hamiltonian needs it (the
// equations of motion divide it back out).
inline constexpr double hbar = 1.054571817e-34;

}  // namespace cqd
