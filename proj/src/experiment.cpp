// SPDX-License-Identifier: Apache-2.0
#include "cqd/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "cqd/kernels.hpp"
#include "cqd/majorana.hpp"
#include "cqd/model.hpp"
#include "cqd/sampling.hpp"

namespace cqd::experiment {

namespace {

// Samples are processed in fixed-size blocks so that SIMD lane grouping is
// a pure function of the sample index, independent of thread scheduling.
constexpr int kBlock = 64;

constexpr unsigned char kUp = 0, kDown = 1, kFailed = 2;

const char* status_message(kernels::Status s) {
    switch (s) {
        case kernels::Status::StepUnderflow:
            return "step size underflow";
        case kernels::Status::NonFinite:
            return "state became non-finite";
        case kernels::Status::MaxSteps:
            return "step budget exhausted";
        default:
            return "ok";
    }
}

struct Job {
    int current_index;
    int begin;  // range into the sorted per-current sample order
    int end;
};

struct SampleIn {
    double theta_n0;
    double phi_n0;
    double k1;
    int index;  // original sample index
};

}  // namespace

void ExperimentDataset::validate() const {
    if (currents.empty() || currents.size() != fractions.size()) {
        throw std::domain_error("dataset must be non-empty and rectangular");
    }
    for (std::size_t i = 0; i < currents.size(); ++i) {
        if (!(currents[i] > 0)) {
            throw std::domain_error("dataset currents must be > 0");
        }
        if (i > 0 && !(currents[i] > currents[i - 1])) {
            throw std::domain_error(
                "dataset currents must be strictly increasing");
        }
        if (!(fractions[i] >= 0 && fractions[i] <= 1)) {
            throw std::domain_error("dataset fractions must lie in [0, 1]");
        }
    }
}

SweepResult run_sweep(const RunConfig& cfg, const SweepOptions& opts) {
    cfg.validate();
    if (opts.threads < 1) throw std::domain_error("threads must be >= 1");
    const kernels::Backend& backend = kernels::select_backend(opts.kernel);

    const int n_currents = static_cast<int>(cfg.currents.size());
    const int n = cfg.n_samples;

    // Shared per-current ODE parameters (k1 and phi_n0 vary per sample).
    std::vector<model::DerivedParams> per_current(n_currents);
    std::vector<majorana::OdeParams> shared(n_currents);
    for (int c = 0; c < n_currents; ++c) {
        per_current[c] = model::derive_for_current(cfg, cfg.currents[c]);
        majorana::OdeParams& p = shared[c];
        p.k0 = per_current[c].k0;
        p.w_n = per_current[c].w_n;
        p.tau_start = cfg.tau_start;
        p.tau_end = cfg.tau_end;
        p.tail_start = cfg.tail_start;
        p.tail_points = cfg.tail_points;
        p.rel_tol = cfg.rel_tol;
        p.abs_tol = cfg.abs_tol;
        p.max_steps = cfg.max_steps;
        p.method = cfg.fixed_rk4 ? majorana::Method::FixedRk4
                                 : majorana::Method::AdaptiveRk54;
        p.fixed_steps = cfg.fixed_steps;
    }

    // Draw all orientations up front (cheap and deterministic), then order
    // each current's samples by polar angle. Lanes of a SIMD batch then
    // carry similar k1 and finish in similar step counts, which keeps the
    // lockstep integrator busy. Results are written back by original
    // index, so the output is identical to unsorted processing.
    std::vector<std::vector<SampleIn>> inputs(n_currents);
    for (int c = 0; c < n_currents; ++c) {
        inputs[c].resize(n);
        for (int s = 0; s < n; ++s) {
            sampling::SampleStream stream(cfg.seed,
                                          static_cast<std::uint64_t>(c),
                                          static_cast<std::uint64_t>(s));
            const auto orient = sampling::sample(stream, cfg.distribution);
            inputs[c][s] = {orient.theta_n0, orient.phi_n0,
                            model::adiabaticity_k1(per_current[c].G,
                                                   cfg.velocity,
                                                   orient.theta_n0,
                                                   cfg.constants),
                            s};
        }
        std::sort(inputs[c].begin(), inputs[c].end(),
                  [](const SampleIn& a, const SampleIn& b) {
                      return std::pair(a.theta_n0, a.index) <
                             std::pair(b.theta_n0, b.index);
                  });
    }

    std::vector<Job> jobs;
    for (int c = 0; c < n_currents; ++c) {
        for (int b = 0; b < n; b += kBlock) {
            jobs.push_back({c, b, std::min(n, b + kBlock)});
        }
    }

    std::vector<std::vector<unsigned char>> outcomes(
        n_currents, std::vector<unsigned char>(n, kFailed));
    std::vector<SkippedSample> failures;
    std::mutex failures_mutex;
    std::atomic<std::size_t> next_job{0};
    std::atomic<bool> abort_requested{false};

    auto worker = [&]() {
        std::vector<kernels::LaneParams> lanes(kBlock);
        std::vector<kernels::SampleOutcome> outs(kBlock);
        while (true) {
            const std::size_t j = next_job.fetch_add(1);
            if (j >= jobs.size()) break;
            if (abort_requested.load(std::memory_order_relaxed)) break;
            const Job job = jobs[j];
            const int count = job.end - job.begin;
            const SampleIn* in = inputs[job.current_index].data() + job.begin;
            for (int i = 0; i < count; ++i) {
                lanes[i].k1 = in[i].k1;
                lanes[i].phi_n0 = in[i].phi_n0;
            }
            backend.integrate_block(
                shared[job.current_index],
                std::span<const kernels::LaneParams>(lanes.data(), count),
                std::span<kernels::SampleOutcome>(outs.data(), count));
            for (int i = 0; i < count; ++i) {
                unsigned char& slot =
                    outcomes[job.current_index][in[i].index];
                if (outs[i].status == kernels::Status::Ok) {
                    const double mag =
                        std::clamp(outs[i].f_final_mag, 0.0, 1.0);
                    const double theta_ef = majorana::final_polar_angle(mag);
                    slot = collapse::branch(theta_ef, in[i].theta_n0) ==
                                   collapse::CollapsedState::Up
                               ? kUp
                               : kDown;
                } else {
                    slot = kFailed;
                    {
                        std::lock_guard<std::mutex> lock(failures_mutex);
                        failures.push_back({job.current_index, in[i].index,
                                            outs[i].tau_reached,
                                            status_message(outs[i].status)});
                    }
                    if (cfg.error_policy == ErrorPolicy::Abort) {
                        abort_requested.store(true,
                                              std::memory_order_relaxed);
                    }
                }
            }
        }
    };

    const int n_threads =
        std::max(1, std::min<int>(opts.threads,
                                  static_cast<int>(jobs.size())));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    if (cfg.error_policy == ErrorPolicy::Abort && !failures.empty()) {
        const auto worst = std::min_element(
            failures.begin(), failures.end(),
            [](const SkippedSample& a, const SkippedSample& b) {
                return std::pair(a.current_index, a.sample_index) <
                       std::pair(b.current_index, b.sample_index);
            });
        throw majorana::integration_error(
            "integration failed at current index " +
                std::to_string(worst->current_index) + ", sample " +
                std::to_string(worst->sample_index) + ": " + worst->reason,
            worst->tau_reached);
    }

    SweepResult result;
    result.config_echo = cfg;
    result.kernel_name = backend.name;
    result.skipped = std::move(failures);
    std::sort(result.skipped.begin(), result.skipped.end(),
              [](const SkippedSample& a, const SkippedSample& b) {
                  return std::pair(a.current_index, a.sample_index) <
                         std::pair(b.current_index, b.sample_index);
              });

    std::vector<collapse::CollapsedState> states;
    states.reserve(n);
    for (int c = 0; c < n_currents; ++c) {
        states.clear();
        for (int s = 0; s < n; ++s) {
            const unsigned char o = outcomes[c][s];
            if (o == kUp) states.push_back(collapse::CollapsedState::Up);
            if (o == kDown) states.push_back(collapse::CollapsedState::Down);
        }
        if (states.empty()) {
            throw std::domain_error(
                "every sample failed at current index " + std::to_string(c));
        }
        SweepPoint point;
        point.current = cfg.currents[c];
        point.k0 = per_current[c].k0;
        point.stats = collapse::flip_fraction(states, cfg.flip_convention);
        result.points.push_back(point);
    }

    if (opts.dataset) {
        result.r_squared = r_squared(result, *opts.dataset);
    }
    return result;
}

double r_squared(const SweepResult& model, const ExperimentDataset& data) {
    data.validate();
    if (model.points.size() != data.currents.size()) {
        throw std::domain_error(
            "model and dataset have different current grids");
    }
    for (std::size_t i = 0; i < data.currents.size(); ++i) {
        if (model.points[i].current != data.currents[i]) {
            throw std::domain_error(
                "model and dataset have different current grids");
        }
    }
    double mean = 0;
    for (double y : data.fractions) mean += y;
    mean /= static_cast<double>(data.fractions.size());

    double ss_tot = 0, ss_res = 0;
    for (std::size_t i = 0; i < data.fractions.size(); ++i) {
        const double dy = data.fractions[i] - mean;
        const double r = data.fractions[i] - model.points[i].stats.fraction;
        ss_tot += dy * dy;
        ss_res += r * r;
    }
    if (!(ss_tot > 0)) {
        throw std::domain_error("dataset fractions have zero variance");
    }
    return 1.0 - ss_res / ss_tot;
}

}  // namespace cqd::experiment
