// SPDX-License-Identifier: Apache-2.0
//
// cqdsim — Monte Carlo simulator of electron-spin flip in the multi-stage
// Stern-Gerlach experiment of Frisch and Segre (1933), using co-quantum
// dynamics: the electron spinor is integrated through the inner-rotation
// chamber for a sampled nuclear orientation, and the branching condition
// converts final angles into collapse outcomes.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cqd/collapse.hpp"
#include "cqd/experiment.hpp"
#include "cqd/io.hpp"
#include "cqd/kernels.hpp"
#include "cqd/majorana.hpp"
#include "cqd/model.hpp"
#include "cqd/sampling.hpp"
#include "cqd/spinor.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitInvalidConfig = 2;
constexpr int kExitDatasetMismatch = 3;
constexpr int kExitSolverFailure = 4;
constexpr int kExitValidationFailure = 5;

std::string out_dir_or_env(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("CQDSIM_OUT_DIR")) return env;
    return ".";
}

struct SweepCli {
    std::string config_path;
    std::vector<double> currents;
    int samples = -1;
    std::string distribution;
    std::string flip_convention;
    std::string seed_str;
    std::string dataset_path;
    std::string out_dir;
    int threads = 1;
    std::string kernel = "auto";
    bool emit_plot = false;
};

cqd::RunConfig build_config(const SweepCli& cli) {
    cqd::RunConfig cfg;
    if (!cli.config_path.empty()) cfg = cqd::io::load_config(cli.config_path);
    if (!cli.currents.empty()) cfg.currents = cli.currents;
    if (cli.samples >= 0) cfg.n_samples = cli.samples;
    if (!cli.distribution.empty()) {
        if (cli.distribution == "isotropic")
            cfg.distribution = cqd::Distribution::Isotropic;
        else if (cli.distribution == "anisotropic")
            cfg.distribution = cqd::Distribution::Anisotropic;
        else
            throw std::domain_error(
                "distribution must be isotropic or anisotropic");
    }
    if (!cli.flip_convention.empty()) {
        if (cli.flip_convention == "up")
            cfg.flip_convention = cqd::FlipConvention::CollapseUpIsFlip;
        else if (cli.flip_convention == "down")
            cfg.flip_convention = cqd::FlipConvention::CollapseDownIsFlip;
        else
            throw std::domain_error("flip-convention must be up or down");
    }
    if (!cli.seed_str.empty()) cfg.seed = std::stoull(cli.seed_str);
    cfg.validate();
    return cfg;
}

int run_sweep_cmd(const SweepCli& cli) {
    cqd::RunConfig cfg;
    try {
        cfg = build_config(cli);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "invalid config: %s\n", e.what());
        return kExitInvalidConfig;
    }

    cqd::experiment::ExperimentDataset dataset;
    cqd::experiment::SweepOptions opts;
    opts.threads = cli.threads;
    opts.kernel = cli.kernel;
    if (!cli.dataset_path.empty()) {
        try {
            dataset = cqd::io::load_dataset(cli.dataset_path);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "dataset error: %s\n", e.what());
            return kExitDatasetMismatch;
        }
        opts.dataset = &dataset;
    }

    const auto t0 = std::chrono::steady_clock::now();
    cqd::experiment::SweepResult result;
    try {
        result = cqd::experiment::run_sweep(cfg, opts);
    } catch (const cqd::majorana::integration_error& e) {
        std::fprintf(stderr, "solver failure: %s (tau=%g)\n", e.what(),
                     e.tau_reached);
        return kExitSolverFailure;
    } catch (const std::domain_error& e) {
        // Grid mismatches surface here; config errors were caught above.
        const std::string what = e.what();
        if (what.find("current grids") != std::string::npos ||
            what.find("dataset") != std::string::npos) {
            std::fprintf(stderr, "dataset error: %s\n", e.what());
            return kExitDatasetMismatch;
        }
        std::fprintf(stderr, "invalid config: %s\n", e.what());
        return kExitInvalidConfig;
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();

    for (const auto& p : result.points) {
        std::printf("I = %8.4g A   W = %.5f +- %.5f   k0 = %.5g\n", p.current,
                    p.stats.fraction, p.stats.std_err, p.k0);
    }
    if (result.r_squared) {
        std::printf("R^2 vs dataset: %.4f\n", *result.r_squared);
    }
    if (!result.skipped.empty()) {
        std::printf("skipped samples: %zu (see metadata)\n",
                    result.skipped.size());
    }

    const std::string dir = out_dir_or_env(cli.out_dir);
    std::filesystem::create_directories(dir);
    cqd::io::write_sweep_csv(dir + "/sweep.csv", result);
    cqd::io::RunInfo info;
    info.version = kVersion;
    info.kernel = result.kernel_name;
    info.threads = cli.threads;
    info.wall_time_s = wall;
    info.r_squared = result.r_squared;
    info.n_skipped = static_cast<long>(result.skipped.size());
    cqd::io::write_metadata_json(dir + "/run.json", cfg, info);
    if (cli.emit_plot) {
        cqd::io::write_sweep_svg(dir + "/sweep.svg", result,
                                 opts.dataset ? &dataset : nullptr);
    }
    std::printf("wrote %s/sweep.csv (kernel %s, %.1f s)\n", dir.c_str(),
                result.kernel_name.c_str(), wall);
    return 0;
}

int run_single_cmd(double current, const std::string& theta_tok,
                   const std::string& phi_tok, const std::string& trace_out,
                   int trace_points, double rel_tol, double abs_tol) {
    cqd::RunConfig cfg;
    double theta = 0, phi = 0;
    try {
        theta = cqd::io::parse_angle(theta_tok);
        phi = cqd::io::parse_angle(phi_tok);
        if (!(current > 0)) throw std::domain_error("current must be > 0");
        if (theta < 0 || theta > std::numbers::pi) {
            throw std::domain_error("theta-n0 must lie in [0, pi]");
        }
        cfg.rel_tol = rel_tol;
        cfg.abs_tol = abs_tol;
        cfg.validate();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "invalid config: %s\n", e.what());
        return kExitInvalidConfig;
    }

    const auto dp = cqd::model::derive_for_sample(cfg, current, theta);
    cqd::majorana::OdeParams p;
    p.k0 = dp.k0;
    p.k1 = dp.k1;
    p.w_n = dp.w_n;
    p.phi_n0 = phi;
    p.tau_start = cfg.tau_start;
    p.tau_end = cfg.tau_end;
    p.tail_start = cfg.tail_start;
    p.tail_points = cfg.tail_points;
    p.rel_tol = cfg.rel_tol;
    p.abs_tol = cfg.abs_tol;
    p.with_trace = true;
    p.trace_points = trace_points;

    cqd::majorana::FlightSolution sol;
    try {
        sol = cqd::majorana::integrate(p);
    } catch (const cqd::majorana::integration_error& e) {
        std::fprintf(stderr, "solver failure: %s (tau=%g)\n", e.what(),
                     e.tau_reached);
        return kExitSolverFailure;
    }

    std::printf(
        "I = %g A  theta_n0 = %g  phi_n0 = %g\n"
        "k0 = %.6g  k1 = %.6g  w_n = %.6g\n"
        "|f|_tail = %.8f  theta_ef = %.8f rad  tail_std = %.3g\n",
        current, theta, phi, dp.k0, dp.k1, dp.w_n, sol.f_final_mag,
        sol.theta_ef, sol.tail_std);
    if (!trace_out.empty()) {
        cqd::io::write_trace_csv(trace_out, sol);
        std::printf("wrote %s (%zu rows)\n", trace_out.c_str(),
                    sol.trace->size());
    }
    return 0;
}

// --- validation suites -------------------------------------------------------

struct SuiteResult {
    std::string name;
    bool pass;
    std::string detail;
};

SuiteResult lz_suite(const std::vector<double>& k0_list, bool mutate) {
    SuiteResult r{"landau-zener law", true, ""};
    char buf[160];
    for (double k0 : k0_list) {
        cqd::majorana::OdeParams p;
        p.k0 = k0;
        p.k1 = 0.0;
        p.w_n = 0.0;
        p.tau_start = -500.0;  // deep start; the law is asymptotic
        p.mutate_coupling_sign = mutate;
        const auto sol = cqd::majorana::integrate(p);
        const double got = sol.f_final_mag * sol.f_final_mag;
        const double want = std::exp(-std::numbers::pi * k0 / 2.0);
        const double rel = std::fabs(got - want) / want;
        std::snprintf(buf, sizeof(buf),
                      "  k0=%-5g |f|^2=%.6f exp(-pi k0/2)=%.6f rel=%.2e\n",
                      k0, got, want, rel);
        r.detail += buf;
        if (!(rel < 0.02)) r.pass = false;
    }
    return r;
}

SuiteResult spinor_suite(int n_sets, double tol, bool mutate) {
    SuiteResult r{"spinor equivalence", true, ""};
    cqd::RunConfig cfg;
    cqd::sampling::SampleStream stream(20230317, 0, 0);
    double worst = 0;
    for (int i = 0; i < n_sets; ++i) {
        const double current =
            cfg.currents[stream.next_u64() % cfg.currents.size()];
        const auto orient =
            i % 2 == 0 ? cqd::sampling::sample_anisotropic(stream)
                       : cqd::sampling::sample_isotropic(stream);
        const auto dp =
            cqd::model::derive_for_sample(cfg, current, orient.theta_n0);

        cqd::majorana::OdeParams p;
        p.k0 = dp.k0;
        p.k1 = dp.k1;
        p.w_n = dp.w_n;
        p.phi_n0 = orient.phi_n0;
        p.with_trace = true;
        p.trace_points = 160;
        p.mutate_coupling_sign = mutate;
        const auto sol = cqd::majorana::integrate(p);

        std::vector<double> taus;
        for (const auto& t : *sol.trace) {
            if (t.tau > cfg.tau_start) taus.push_back(t.tau);
        }
        const auto run = cqd::spinor::integrate_spinor(
            cfg, current, orient.theta_n0, orient.phi_n0, taus);
        double sup = 0;
        for (std::size_t k = 0; k < taus.size(); ++k) {
            sup = std::max(sup, std::fabs(std::abs(run.states[k].c1) -
                                          std::abs(sol.trace->at(k + 1).f)));
        }
        worst = std::max(worst, sup);
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf),
                  "  %d random sets, sup| |c1| - |f| | = %.3e (tol %g)\n",
                  n_sets, worst, tol);
    r.detail = buf;
    r.pass = worst < tol;
    return r;
}

SuiteResult sampler_suite() {
    SuiteResult r{"sampler fidelity", true, ""};
    const int n = 1000000;
    char buf[160];

    for (int mode = 0; mode < 2; ++mode) {
        const bool aniso = mode == 0;
        double sum_cos = 0;
        std::vector<double> thetas(n);
        for (int i = 0; i < n; ++i) {
            cqd::sampling::SampleStream s(777, static_cast<unsigned>(mode),
                                          static_cast<unsigned>(i));
            const auto o = aniso ? cqd::sampling::sample_anisotropic(s)
                                 : cqd::sampling::sample_isotropic(s);
            thetas[i] = o.theta_n0;
            sum_cos += std::cos(o.theta_n0);
        }
        const double mean = sum_cos / n;
        const double want = aniso ? -1.0 / 3.0 : 0.0;
        const double sigma =
            std::sqrt((aniso ? 2.0 / 9.0 : 1.0 / 3.0) / n);
        std::sort(thetas.begin(), thetas.end());
        double ks = 0;
        for (int i = 0; i < n; ++i) {
            const double c = std::cos(thetas[i]);
            const double cdf =
                aniso ? (1.0 - c) * (1.0 - c) / 4.0 : (1.0 - c) / 2.0;
            ks = std::max(ks, std::fabs(cdf - (i + 1.0) / n));
            ks = std::max(ks, std::fabs(cdf - static_cast<double>(i) / n));
        }
        const double ks_bound = 3.0 / std::sqrt(static_cast<double>(n));
        std::snprintf(buf, sizeof(buf),
                      "  %s: mean cos = %+.5f (want %+.5f +- %.5f), KS = "
                      "%.5f (< %.5f)\n",
                      aniso ? "anisotropic" : "isotropic", mean, want,
                      3 * sigma, ks, ks_bound);
        r.detail += buf;
        if (!(std::fabs(mean - want) < 3 * sigma && ks < ks_bound)) {
            r.pass = false;
        }
    }
    return r;
}

int run_validate_cmd(const std::vector<double>& lz_k0, bool mutate) {
    std::vector<SuiteResult> suites;
    suites.push_back(lz_suite(
        lz_k0.empty() ? std::vector<double>{0.1, 0.5, 1.0, 2.0} : lz_k0,
        mutate));
    suites.push_back(spinor_suite(20, 1e-6, mutate));
    suites.push_back(sampler_suite());

    bool all_pass = true;
    for (const auto& s : suites) {
        std::printf("[%s] %s\n%s", s.pass ? "PASS" : "FAIL", s.name.c_str(),
                    s.detail.c_str());
        all_pass = all_pass && s.pass;
    }
    return all_pass ? 0 : kExitValidationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "cqdsim: co-quantum-dynamics simulation of the Frisch-Segre "
        "multi-stage Stern-Gerlach experiment"};
    app.require_subcommand(1);

    SweepCli sc;
    auto* sweep = app.add_subcommand(
        "sweep", "Monte Carlo flip-fraction sweep over wire currents");
    sweep->add_option("--config", sc.config_path, "JSON config file");
    sweep->add_option("--currents", sc.currents,
                      "wire currents in A (overrides config)")
        ->delimiter(',');
    sweep->add_option("--samples", sc.samples, "Monte Carlo samples per current");
    sweep->add_option("--distribution", sc.distribution,
                      "isotropic or anisotropic");
    sweep->add_option("--flip-convention", sc.flip_convention,
                      "which collapse counts as flip: up or down");
    sweep->add_option("--seed", sc.seed_str, "64-bit RNG seed");
    sweep->add_option("--dataset", sc.dataset_path,
                      "experimental dataset CSV for R^2 scoring");
    sweep->add_option("--out-dir", sc.out_dir,
                      "output directory (or env CQDSIM_OUT_DIR)");
    sweep->add_option("--threads", sc.threads, "worker threads");
    sweep->add_option("--kernel", sc.kernel,
                      "integration kernel: auto, scalar, generic4, avx2, "
                      "avx512, neon");
    sweep->add_flag("--emit-plot", sc.emit_plot, "also write sweep.svg");

    double s_current = 0.1;
    std::string s_theta = "6pi/7", s_phi = "0", s_trace;
    int s_trace_points = 2051;
    double s_rel = 1e-10, s_abs = 1e-10;
    auto* single = app.add_subcommand(
        "single", "integrate one flight and dump the |f(tau)| trace");
    single->add_option("--current", s_current, "wire current in A");
    single->add_option("--theta-n0", s_theta,
                       "initial nuclear polar angle (radians or pi literal)");
    single->add_option("--phi-n0", s_phi, "initial nuclear azimuth");
    single->add_option("--trace-out", s_trace, "trace CSV path");
    single->add_option("--trace-points", s_trace_points, "trace grid size");
    single->add_option("--rel-tol", s_rel, "relative tolerance");
    single->add_option("--abs-tol", s_abs, "absolute tolerance");

    std::vector<double> v_lz;
    bool v_mutate = false;
    auto* validate = app.add_subcommand(
        "validate", "run the physics validation suites");
    validate->add_option("--lz-k0", v_lz,
                         "k0 values for the Landau-Zener check")
        ->delimiter(',');
    validate->add_flag(
        "--mutate-rhs-sign", v_mutate,
        "flip a sign in the flight equation (the suites must then fail)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) return run_sweep_cmd(sc);
        if (single->parsed()) {
            return run_single_cmd(s_current, s_theta, s_phi, s_trace,
                                  s_trace_points, s_rel, s_abs);
        }
        if (validate->parsed()) return run_validate_cmd(v_lz, v_mutate);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
