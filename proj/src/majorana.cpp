// SPDX-License-Identifier: Apache-2.0
#include "cqd/majorana.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kernels/backends.hpp"
#include "kernels/flight_kernel.hpp"
#include "kernels/pack_generic.hpp"

namespace cqd::majorana {

void OdeParams::validate() const {
    if (!(k0 >= 0.0)) throw std::domain_error("k0 must be >= 0");
    if (!(k1 >= 0.0)) throw std::domain_error("k1 must be >= 0");
    if (!(w_n >= 0.0)) throw std::domain_error("w_n must be >= 0");
    if (!(tau_start < tail_start && tail_start < tau_end)) {
        throw std::domain_error(
            "window must satisfy tau_start < tail_start < tau_end");
    }
    if (tail_points < 1) throw std::domain_error("tail_points must be >= 1");
    if (!(rel_tol > 0.0)) throw std::domain_error("rel_tol must be > 0");
    if (!(abs_tol > 0.0)) throw std::domain_error("abs_tol must be > 0");
    if (max_steps < 1) throw std::domain_error("max_steps must be >= 1");
    if (fixed_steps < 100) {
        throw std::domain_error("fixed_steps must be >= 100");
    }
    if (with_trace && trace_points < 2) {
        throw std::domain_error("trace_points must be >= 2");
    }
}

std::complex<double> rhs(double tau, std::complex<double> f,
                         std::complex<double> df, const OdeParams& params) {
    using K = kernels::FlightKernel<kernels::GenericPack<1>>;
    typename K::Coeffs cf;
    using P1 = kernels::GenericPack<1>;
    cf.k1 = P1::broadcast(params.k1);
    cf.sqrt_k1 = kernels::sqrt(cf.k1);
    cf.sqrt_k0 = std::sqrt(params.k0);
    cf.kterm = P1::broadcast(params.k0) + cf.k1;
    cf.cross =
        P1::broadcast(2.0) * (P1::broadcast(cf.sqrt_k0) * cf.sqrt_k1);
    cf.k1_zero = kernels::cmp_le(cf.k1, P1::zero());
    cf.w_n = params.w_n;
    cf.ksign = params.mutate_coupling_sign ? -1.0 : 1.0;

    typename K::State y = {P1::broadcast(f.real()), P1::broadcast(f.imag()),
                           P1::broadcast(df.real()), P1::broadcast(df.imag())};
    auto d = K::deriv(P1::broadcast(tau), y, cf, P1::broadcast(params.phi_n0));
    return {d[2].lane(0), d[3].lane(0)};
}

FlightSolution integrate(const OdeParams& params) {
    params.validate();
    kernels::LaneParams lane{params.k1, params.phi_n0};
    kernels::SampleOutcome out;
    std::vector<TracePoint> trace;
    kernels::run_scalar(params, lane, out,
                        params.with_trace ? &trace : nullptr);

    switch (out.status) {
        case kernels::Status::Ok:
            break;
        case kernels::Status::StepUnderflow:
            throw integration_error("step size underflow", out.tau_reached);
        case kernels::Status::NonFinite:
            throw integration_error("state became non-finite",
                                    out.tau_reached);
        case kernels::Status::MaxSteps:
            throw integration_error("step budget exhausted", out.tau_reached);
    }

    FlightSolution sol;
    sol.f_final_mag = std::clamp(out.f_final_mag, 0.0, 1.0);
    sol.theta_ef = final_polar_angle(sol.f_final_mag);
    sol.tail_std = out.tail_std;
    sol.max_abs_f = out.max_abs_f;
    if (params.with_trace) sol.trace = std::move(trace);
    return sol;
}

double final_polar_angle(double f_final_mag) {
    if (!(f_final_mag >= 0.0)) {
        throw std::domain_error("f_final_mag must be >= 0");
    }
    return 2.0 * std::asin(std::min(f_final_mag, 1.0));
}

}  // namespace cqd::majorana
