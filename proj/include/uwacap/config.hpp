// SPDX-License-Identifier: Apache-2.0
//
// uwacap - shallow-water acoustic channel modelling and vector-sensor
// capacity analysis toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef UWACAP_CONFIG_HPP
#define UWACAP_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uwacap/channel_model.hpp"
#include "uwacap/ray_geometry.hpp"

namespace uwacap {

// Experiment configs are flat `key = value` text with dotted sections
// (`scenario.range_m = 1000`), '#' comments, and no dependencies on any
// serialization library. Unknown keys, duplicate keys, and out-of-range
// values are rejected with the offending key named.

struct SweepSpec {
    enum class Axis { snr_db, range_m, frequency_hz, n_rays };

    Axis axis = Axis::snr_db;
    std::vector<double> values; // nonempty, strictly increasing
};

struct GainConfig {
    enum class Mode { fit, explicit_params };

    Mode mode = Mode::fit;
    double lambda = 1.0;
    double xi_rad = 0.0;
    double varsigma_rad = 0.3;
    // When set, the gain scale is rescaled after fitting so the total mean
    // channel energy sum_i E[h_i^2] equals 1; the SNR axis then reads as the
    // mean received pressure SNR.
    bool normalize_energy = false;
};

struct ExperimentConfig {
    Scenario scenario;
    double beta_rad = 0.02; // global AoA half-width applied to every path
    GainConfig gain;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    int bins = 15;
    int n_rays = 0;      // 0 = keep all traced rays, else truncate after delay sort
    double snr_db = 10.0;
    std::optional<SweepSpec> sweep;
};

const char* to_string(SweepSpec::Axis axis);

ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig load_experiment_config(const std::string& path);

// Deterministic one-line-per-key echo of the effective config, used for the
// '#' provenance header of every CSV product.
std::vector<std::string> describe(const ExperimentConfig& config);

} // namespace uwacap

#endif // UWACAP_CONFIG_HPP
