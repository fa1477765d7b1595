// SPDX-License-Identifier: Apache-2.0
#include "cqd/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cqd::model {

namespace {

constexpr double pi = std::numbers::pi;

void require_positive(double x, const char* name) {
    if (!(x > 0.0)) {
        throw std::domain_error(std::string(name) + " must be > 0");
    }
}

void require_polar(double theta, const char* name) {
    if (!(theta >= 0.0 && theta <= pi)) {
        throw std::domain_error(std::string(name) + " must lie in [0, pi]");
    }
}

}  // namespace

double gradient_from_current(double current, double B_r,
                             const PhysicalConstants& c) {
    require_positive(current, "current");
    require_positive(B_r, "B_r");
    return 2.0 * pi * B_r * B_r / (c.mu0 * current);
}

double nuclear_field(const PhysicalConstants& c) {
    return 5.0 * c.mu0 * c.mu_n / (16.0 * pi * c.R_vdw * c.R_vdw * c.R_vdw);
}

double electron_field(const PhysicalConstants& c) {
    return 5.0 * c.mu0 * c.mu_e / (16.0 * pi * c.R_vdw * c.R_vdw * c.R_vdw);
}

double adiabaticity_k0(double G, double v, double z_a,
                       const PhysicalConstants& c) {
    require_positive(G, "G");
    require_positive(v, "v");
    require_positive(z_a, "z_a");
    return c.gamma_e_mag * G * z_a * z_a / v;
}

double adiabaticity_k1(double G, double v, double theta_n0,
                       const PhysicalConstants& c) {
    require_positive(G, "G");
    require_positive(v, "v");
    require_polar(theta_n0, "theta_n0");
    const double s = nuclear_field(c) * std::sin(theta_n0);
    return c.gamma_e_mag * s * s / (G * v);
}

double larmor_wn(double G, double v, const PhysicalConstants& c) {
    require_positive(G, "G");
    require_positive(v, "v");
    return 2.0 * c.gamma_n_mag * electron_field(c) /
           std::sqrt(c.gamma_e_mag * G * v);
}

double time_scale_alpha(double G, double v, const PhysicalConstants& c) {
    require_positive(G, "G");
    require_positive(v, "v");
    return 0.5 * std::sqrt(c.gamma_e_mag * G * v);
}

double tau_offset(double G, double v, double theta_n0,
                  const PhysicalConstants& c) {
    require_positive(G, "G");
    require_positive(v, "v");
    require_polar(theta_n0, "theta_n0");
    return 0.5 * std::sqrt(c.gamma_e_mag / (G * v)) * nuclear_field(c) *
           std::cos(theta_n0);
}

DerivedParams derive_for_current(const RunConfig& cfg, double current) {
    DerivedParams p;
    p.G = gradient_from_current(current, cfg.B_r, cfg.constants);
    p.B_n_mag = nuclear_field(cfg.constants);
    p.B_e_mag = electron_field(cfg.constants);
    p.k0 = adiabaticity_k0(p.G, cfg.velocity, cfg.z_a, cfg.constants);
    p.w_n = larmor_wn(p.G, cfg.velocity, cfg.constants);
    p.alpha = time_scale_alpha(p.G, cfg.velocity, cfg.constants);
    return p;
}

DerivedParams derive_for_sample(const RunConfig& cfg, double current,
                                double theta_n0) {
    DerivedParams p = derive_for_current(cfg, current);
    p.k1 = adiabaticity_k1(p.G, cfg.velocity, theta_n0, cfg.constants);
    p.tau_offset = tau_offset(p.G, cfg.velocity, theta_n0, cfg.constants);
    return p;
}

double tau_of_t(double t, const DerivedParams& p) {
    return p.alpha * t + p.tau_offset;
}

double t_of_tau(double tau, const DerivedParams& p) {
    return (tau - p.tau_offset) / p.alpha;
}

std::array<double, 3> total_field(double t, double theta_n, double phi_n,
                                  const RunConfig& cfg,
                                  const DerivedParams& p) {
    const double Bn = p.B_n_mag;
    const double st = std::sin(theta_n);
    return {
        Bn * st * std::cos(phi_n),
        p.G * cfg.z_a + Bn * st * std::sin(phi_n),
        p.G * cfg.velocity * t + Bn * std::cos(theta_n),
    };
}

}  // namespace cqd::model
