// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>

#include "cqd/config.hpp"
#include "cqd/constants.hpp"

namespace cqd::model {

/// Dimensionless parameters for one (wire current, nuclear orientation)
/// pair. G, B_n, B_e, k0, w_n and alpha depend on the current only;
/// k1 and tau_offset also depend on the sampled polar angle theta_n0.
struct DerivedParams {
    double G = 0;           // quadrupole field gradient, T/m
    double B_n_mag = 0;     // torque-averaged nuclear field, T
    double B_e_mag = 0;     // torque-averaged electron field, T
    double k0 = 0;          // longitudinal adiabaticity parameter
    double k1 = 0;          // nuclear-coupling adiabaticity parameter
    double w_n = 0;         // dimensionless nuclear Larmor frequency
    double alpha = 0;       // time scale: tau = alpha * t + tau_offset, 1/s
    double tau_offset = 0;  // null-point offset in dimensionless time
};

// G = 2 pi B_r^2 / (mu0 I)
double gradient_from_current(double current, double B_r,
                             const PhysicalConstants& c = {});

// B_n = 5 mu0 mu_n / (16 pi R^3)
double nuclear_field(const PhysicalConstants& c = {});

// B_e = 5 mu0 mu_e / (16 pi R^3)
double electron_field(const PhysicalConstants& c = {});

// k0 = |gamma_e| G z_a^2 / v
double adiabaticity_k0(double G, double v, double z_a,
                       const PhysicalConstants& c = {});

// k1 = |gamma_e| (B_n sin(theta_n0))^2 / (G v)
double adiabaticity_k1(double G, double v, double theta_n0,
                       const PhysicalConstants& c = {});

// w_n = 2 |gamma_n| B_e / sqrt(|gamma_e| G v)
double larmor_wn(double G, double v, const PhysicalConstants& c = {});

// alpha = (1/2) sqrt(|gamma_e| G v)
double time_scale_alpha(double G, double v, const PhysicalConstants& c = {});

// tau_offset = (1/2) sqrt(|gamma_e| / (G v)) B_n cos(theta_n0)
double tau_offset(double G, double v, double theta_n0,
                  const PhysicalConstants& c = {});

/// Everything that depends on the current alone (k1, tau_offset left zero).
DerivedParams derive_for_current(const RunConfig& cfg, double current);

/// Completes a per-current DerivedParams with the orientation-dependent
/// pieces for the sampled polar angle.
DerivedParams derive_for_sample(const RunConfig& cfg, double current,
                                double theta_n0);

// tau = alpha * t + tau_offset, and its inverse.
double tau_of_t(double t, const DerivedParams& p);
double t_of_tau(double tau, const DerivedParams& p);

/// Total field (quadrupole + torque-averaged nuclear field) at flight
/// time t for nuclear orientation (theta_n, phi_n):
///   B_x = B_n sin(theta_n) cos(phi_n)
///   B_y = G z_a + B_n sin(theta_n) sin(phi_n)
///   B_z = G v t + B_n cos(theta_n)
/// Used by the direct spinor integrator and diagnostics only.
std::array<double, 3> total_field(double t, double theta_n, double phi_n,
                                  const RunConfig& cfg,
                                  const DerivedParams& p);

}  // namespace cqd::model
