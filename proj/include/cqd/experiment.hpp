// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cqd/collapse.hpp"
#include "cqd/config.hpp"

namespace cqd::experiment {

/// One current's aggregated Monte Carlo outcome. k0 is attached as a
/// diagnostic so plots can be read against adiabaticity.
struct SweepPoint {
    double current = 0;
    collapse::FlipStatistics stats;
    double k0 = 0;
};

/// A sample whose integration failed under ErrorPolicy::SkipAndRecord.
struct SkippedSample {
    int current_index = 0;
    int sample_index = 0;
    double tau_reached = 0;
    std::string reason;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    RunConfig config_echo;
    std::optional<double> r_squared;
    std::vector<SkippedSample> skipped;
    std::string kernel_name;
};

/// Reference measurements: (current, flip fraction) rows with strictly
/// increasing positive currents and fractions in [0, 1].
struct ExperimentDataset {
    std::vector<double> currents;
    std::vector<double> fractions;

    void validate() const;
};

struct SweepOptions {
    int threads = 1;
    std::string kernel = "auto";
    const ExperimentDataset* dataset = nullptr;  // optional R^2 scoring
};

/// Runs the full Monte Carlo sweep. Deterministic for a fixed config: the
/// result is invariant across thread counts and scheduling. Integration
/// failures abort with context or are recorded and skipped, per
/// cfg.error_policy.
SweepResult run_sweep(const RunConfig& cfg, const SweepOptions& opts = {});

/// Coefficient of determination 1 - SS_res / SS_tot of the model points
/// against the dataset; the current grids must match exactly. May be
/// negative.
double r_squared(const SweepResult& model, const ExperimentDataset& data);

}  // namespace cqd::experiment
