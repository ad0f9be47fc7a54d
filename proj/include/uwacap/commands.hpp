// SPDX-License-Identifier: Apache-2.0
//
// uwacap - shallow-water acoustic channel modelling and vector-sensor
// capacity analysis toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef UWACAP_COMMANDS_HPP
#define UWACAP_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "uwacap/config.hpp"
#include "uwacap/fitting.hpp"

namespace uwacap {

// Command implementations behind the CLI. Every command is deterministic
// given (config, seed): identical inputs produce byte-identical CSV. Output
// uses '.' decimals, a header row, and '#' comment lines for provenance.

// CSV of the traced eigenrays:
// aoa_rad,delay_s,amplitude,surface_bounces,bottom_bounces
void run_trace(const ExperimentConfig& config, std::ostream& out);

// Parses an ASCII arrivals stream and dumps every arrival as eigenray CSV
// rows keyed by the (source depth, receiver depth, receiver range) cell.
void run_parse_arrivals(std::istream& in, std::ostream& out);

enum class FitInputKind { trace_csv, bellhop_arrivals, gain_points };

// bin -> fit -> metrics. `provenance` (typically the input path) is echoed in
// a header comment. Input is trace CSV, an ASCII arrivals file, or an
// already-binned gain table (CSV columns aoa_rad,gain_sq,weight; binning is
// skipped). A CSV whose header names gain_sq is treated as a gain table even
// when passed as trace_csv.
void run_fit(std::istream& in, FitInputKind kind, int n_bins, const std::string& provenance,
             std::ostream& out);

// Single-point capacity report at config.snr_db.
void run_capacity(const ExperimentConfig& config, std::ostream& out);

// One CSV row per sweep value:
// <axis>,c_mc_vector,c_mc_stderr,c_mc_siso,c_ub_closed,c_ub_quadrature
// Range and frequency sweeps re-trace and re-fit per point; the ray-count
// sweep traces once (raising the bounce order if needed) and truncates the
// delay-sorted ray list.
void run_sweep(const ExperimentConfig& config, std::ostream& out);

// Vector vs SISO vs upper bound across the SNR values of the sweep spec
// (axis must be snr_db). Verifies Jensen dominance row-wise before writing
// and throws std::runtime_error on a violation beyond 3 standard errors.
void run_compare(const ExperimentConfig& config, std::ostream& out);

// Reads rays back from run_trace-style CSV (used by run_fit and tests).
std::vector<Eigenray> read_trace_csv(std::istream& in);

// Reads a binned gain table (CSV columns aoa_rad,gain_sq,weight).
std::vector<GainAoaPoint> read_gain_points_csv(std::istream& in);

// Shared model-preparation pipeline: trace, optionally truncate to n_rays,
// build AoA specs, then fit (or take explicit parameters) and optionally
// normalize the total mean channel energy to 1.
struct PreparedModel {
    std::vector<Eigenray> rays;
    AoaSpecs specs;
    ScaledGaussianGainModel gain;
    bool fitted;
    bool fit_converged;
};

PreparedModel prepare_model(const ExperimentConfig& config, const Scenario& scenario);

} // namespace uwacap

#endif // UWACAP_COMMANDS_HPP
