// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "cqd/config.hpp"
#include "cqd/experiment.hpp"
#include "cqd/majorana.hpp"

#ifndef CQD_COMPILER_VERSION
#ifdef __VERSION__
#define CQD_COMPILER_VERSION __VERSION__
#else
#define CQD_COMPILER_VERSION "unknown"
#endif
#endif

namespace cqd::io {

/// Extra run facts recorded next to the config echo in metadata files.
struct RunInfo {
    std::string version;
    std::string compiler = CQD_COMPILER_VERSION;
    std::string kernel;
    int threads = 1;
    double wall_time_s = 0;
    std::optional<double> r_squared;
    long n_skipped = 0;
};

// --- config files ----------------------------------------------------------
// A config file is a UTF-8 JSON object mirroring RunConfig field for field;
// omitted keys take the RunConfig defaults, unknown keys are rejected. A
// "run_info" object is tolerated (and ignored) so an emitted metadata file
// can be fed back as a config.

RunConfig load_config(const std::string& path);
RunConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const RunConfig& cfg);

/// Metadata document: the config echo plus a run_info object. Reloading it
/// as a config reproduces the identical sweep.
std::string metadata_json_text(const RunConfig& cfg, const RunInfo& info);
void write_metadata_json(const std::string& path, const RunConfig& cfg,
                         const RunInfo& info);

// --- dataset CSV ------------------------------------------------------------
// Format: optional '#' comment lines, then the header
// "current_A,flip_fraction", then one row per current.

experiment::ExperimentDataset load_dataset(const std::string& path);
experiment::ExperimentDataset dataset_from_csv_text(const std::string& text);
std::string dataset_to_csv_text(const experiment::ExperimentDataset& ds);

// --- results ----------------------------------------------------------------

/// Header "current_A,flip_fraction,std_err,k0"; full round-trip precision.
std::string sweep_csv_text(const experiment::SweepResult& result);
void write_sweep_csv(const std::string& path,
                     const experiment::SweepResult& result);

/// Columns tau,abs_f,re_f,im_f over the full window (requires a trace).
std::string trace_csv_text(const majorana::FlightSolution& sol);
void write_trace_csv(const std::string& path,
                     const majorana::FlightSolution& sol);

/// Log-current plot of the sweep, optionally overlaying the dataset.
/// Presentation only; never affects numeric outputs.
std::string sweep_svg_text(const experiment::SweepResult& result,
                           const experiment::ExperimentDataset* dataset);
void write_sweep_svg(const std::string& path,
                     const experiment::SweepResult& result,
                     const experiment::ExperimentDataset* dataset);

// --- misc -------------------------------------------------------------------

/// Parses an angle token: plain radians ("1.5708") or pi literals
/// ("pi", "6pi/7", "0.5pi", "pi/2"). Throws std::domain_error on junk.
double parse_angle(const std::string& token);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace cqd::io
