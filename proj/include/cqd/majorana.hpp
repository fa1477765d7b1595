// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cqd::majorana {

/// Integration method: the adaptive Dormand-Prince 5(4) pair is the
/// production path; the fixed-step classical RK4 exists for cross-checks.
enum class Method { AdaptiveRk54, FixedRk4 };

/// Inputs for one flight integration in dimensionless time.
struct OdeParams {
    double k0 = 0;           // longitudinal adiabaticity, > 0 in production
    double k1 = 0;           // nuclear-coupling adiabaticity, >= 0
    double w_n = 0;          // dimensionless nuclear Larmor frequency
    double phi_n0 = 0;       // initial nuclear azimuth, rad
    double tau_start = -30;  // window; f(tau_start) = 1, f'(tau_start) = 0
    double tau_end = 60;
    double tail_start = 52;  // |f| averaged on a uniform grid in (tail_start, tau_end]
    int tail_points = 187;
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    long max_steps = 5'000'000;

    Method method = Method::AdaptiveRk54;
    long fixed_steps = 2'000'000;  // step count for Method::FixedRk4

    // Trace capture (dense |f| samples over the whole window); scalar path only.
    bool with_trace = false;
    int trace_points = 2051;

    // Test hook: flips the sign of the restoring coefficient so validation
    // suites can demonstrate they would catch a miscoded equation.
    bool mutate_coupling_sign = false;

    void validate() const;
};

struct TracePoint {
    double tau;
    std::complex<double> f;
};

/// Result of one flight.
struct FlightSolution {
    double f_final_mag = 0;  // mean |f| over the tail grid, clamped to [0, 1]
    double theta_ef = 0;     // 2 asin(f_final_mag), rad
    double tail_std = 0;     // std dev of |f| over the tail grid
    double max_abs_f = 0;    // max |f| seen at sampled points
    std::optional<std::vector<TracePoint>> trace;
};

/// Raised when the adaptive integration cannot continue.
class integration_error : public std::runtime_error {
  public:
    integration_error(const std::string& what, double tau)
        : std::runtime_error(what), tau_reached(tau) {}
    double tau_reached;
};

/// Second derivative d2f/dtau2 of the phase-transformed flight equation
///   f'' = (sqrt(k1) w_n / (i sqrt(k1) + sqrt(k0) e^{i phi}) + 4 i tau) f'
///         - (k0 + k1 + 2 sqrt(k0 k1) sin(phi)) f,   phi = w_n tau + phi_n0.
/// The coupling fraction is 0 by continuity when k1 = 0.
std::complex<double> rhs(double tau, std::complex<double> f,
                         std::complex<double> df, const OdeParams& params);

/// Adaptive integration over [tau_start, tau_end] with f(tau_start) = 1,
/// f'(tau_start) = 0; runs on the scalar reference kernel.
FlightSolution integrate(const OdeParams& params);

/// theta = 2 asin(min(|f|, 1)).
double final_polar_angle(double f_final_mag);

}  // namespace cqd::majorana
