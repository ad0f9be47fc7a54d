// SPDX-License-Identifier: Apache-2.0
//
// uwacap - shallow-water acoustic channel modelling and vector-sensor
// capacity analysis toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "uwacap/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "uwacap/arrivals.hpp"
#include "uwacap/capacity.hpp"

namespace uwacap {

namespace {

std::string csv_num(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

void write_provenance(const ExperimentConfig& config, const char* command, std::ostream& out) {
    out << "# uwacap " << command << '\n';
    for (const std::string& line : describe(config)) out << "# " << line << '\n';
}

double parse_csv_field(const std::string& field, int lineno, const char* what) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw std::invalid_argument("CSV line " + std::to_string(lineno) + ": expected a "
                                    "number for " + what + ", got '" + field + "'");
    return value;
}

std::vector<Eigenray> truncate_rays(std::vector<Eigenray> rays, int n_rays) {
    if (n_rays > 0 && static_cast<std::size_t>(n_rays) < rays.size())
        rays.resize(static_cast<std::size_t>(n_rays));
    return rays;
}

void write_sweep_header(const ExperimentConfig& config, const char* axis, std::ostream& out) {
    write_provenance(config, "sweep", out);
    out << "# capacity columns are in bits/s/Hz\n";
    out << axis << ",c_mc_vector,c_mc_stderr,c_mc_siso,c_ub_closed,c_ub_quadrature\n";
}

void write_sweep_row(std::ostream& out, double axis_value, const PreparedModel& model,
                     const ExperimentConfig& config, SnrSpec snr) {
    const CapacityEstimate vec =
        ergodic_capacity_mc(model.specs.models, model.specs.delays_s, model.gain, snr,
                            config.trials, config.seed, McVariant::vector_sensor);
    const CapacityEstimate siso =
        ergodic_capacity_mc(model.specs.models, model.specs.delays_s, model.gain, snr,
                            config.trials, config.seed, McVariant::siso);
    const double ub_closed = capacity_upper_bound_closed_form(model.specs.models, model.gain, snr);
    const double ub_quad = capacity_upper_bound_quadrature(model.specs.models, model.gain, snr);
    out << csv_num(axis_value) << ',' << csv_num(vec.mean) << ',' << csv_num(vec.std_error)
        << ',' << csv_num(siso.mean) << ',' << csv_num(ub_closed) << ',' << csv_num(ub_quad)
        << '\n';
}

} // namespace

PreparedModel prepare_model(const ExperimentConfig& config, const Scenario& scenario) {
    std::vector<Eigenray> rays = truncate_rays(trace_image_method(scenario), config.n_rays);
    AoaSpecs specs = eigenrays_to_aoa_specs(rays, config.beta_rad);

    bool fitted = false;
    bool fit_converged = true;
    ScaledGaussianGainModel gain(1.0, 0.0, 1.0);
    if (config.gain.mode == GainConfig::Mode::explicit_params) {
        gain = ScaledGaussianGainModel(config.gain.lambda, config.gain.xi_rad,
                                       config.gain.varsigma_rad);
    } else {
        const std::vector<GainAoaPoint> points = bin_gain_vs_aoa(rays, config.bins);
        const FitResult fit = fit_scaled_gaussian(points);
        gain = fit.model;
        fitted = true;
        fit_converged = fit.converged;
    }

    if (config.gain.normalize_energy) {
        const double energy = expected_channel_energy(specs.models, gain, false);
        if (!(energy > 0.0))
            throw std::runtime_error("gain.normalize_energy: total mean channel energy is zero");
        gain = ScaledGaussianGainModel(gain.lambda / energy, gain.xi, gain.varsigma);
    }

    return PreparedModel{std::move(rays), std::move(specs), gain, fitted, fit_converged};
}

void run_trace(const ExperimentConfig& config, std::ostream& out) {
    const std::vector<Eigenray> rays =
        truncate_rays(trace_image_method(config.scenario), config.n_rays);
    write_provenance(config, "trace", out);
    out << "aoa_rad,delay_s,amplitude,surface_bounces,bottom_bounces\n";
    for (const Eigenray& ray : rays) {
        out << csv_num(ray.aoa_rad) << ',' << csv_num(ray.delay_s) << ','
            << csv_num(ray.amplitude) << ',' << ray.surface_bounces << ','
            << ray.bottom_bounces << '\n';
    }
}

void run_parse_arrivals(std::istream& in, std::ostream& out) {
    const ArrivalsData data = parse_bellhop_arrivals(in);
    out << "# uwacap parse-arrivals: frequency_hz = " << csv_num(data.frequency_hz) << '\n';
    out << "source_depth_m,receiver_depth_m,receiver_range_m,"
           "aoa_rad,delay_s,amplitude,surface_bounces,bottom_bounces\n";
    for (std::size_t isrc = 0; isrc < data.source_depths_m.size(); ++isrc) {
        for (std::size_t ird = 0; ird < data.receiver_depths_m.size(); ++ird) {
            for (std::size_t irr = 0; irr < data.receiver_ranges_m.size(); ++irr) {
                for (const Eigenray& ray : eigenrays_for_pair(data, isrc, ird, irr)) {
                    out << csv_num(data.source_depths_m[isrc]) << ','
                        << csv_num(data.receiver_depths_m[ird]) << ','
                        << csv_num(data.receiver_ranges_m[irr]) << ','
                        << csv_num(ray.aoa_rad) << ',' << csv_num(ray.delay_s) << ','
                        << csv_num(ray.amplitude) << ',' << ray.surface_bounces << ','
                        << ray.bottom_bounces << '\n';
                }
            }
        }
    }
}

std::vector<Eigenray> read_trace_csv(std::istream& in) {
    std::vector<Eigenray> rays;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) { // header row
            header_seen = true;
            continue;
        }
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 5)
            throw std::invalid_argument("trace CSV line " + std::to_string(lineno) +
                                        ": expected 5 fields, got " +
                                        std::to_string(fields.size()));
        Eigenray ray;
        ray.aoa_rad = parse_csv_field(fields[0], lineno, "aoa_rad");
        ray.delay_s = parse_csv_field(fields[1], lineno, "delay_s");
        ray.amplitude = parse_csv_field(fields[2], lineno, "amplitude");
        ray.surface_bounces = static_cast<int>(parse_csv_field(fields[3], lineno,
                                                               "surface_bounces"));
        ray.bottom_bounces = static_cast<int>(parse_csv_field(fields[4], lineno,
                                                              "bottom_bounces"));
        rays.push_back(ray);
    }
    if (rays.empty()) throw std::invalid_argument("trace CSV: no data rows");
    return rays;
}

std::vector<GainAoaPoint> read_gain_points_csv(std::istream& in) {
    std::vector<GainAoaPoint> points;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 3)
            throw std::invalid_argument("gain table line " + std::to_string(lineno) +
                                        ": expected 3 fields (aoa_rad,gain_sq,weight), got " +
                                        std::to_string(fields.size()));
        GainAoaPoint point;
        point.aoa_rad = parse_csv_field(fields[0], lineno, "aoa_rad");
        point.gain_sq = parse_csv_field(fields[1], lineno, "gain_sq");
        point.weight = parse_csv_field(fields[2], lineno, "weight");
        points.push_back(point);
    }
    if (points.empty()) throw std::invalid_argument("gain table: no data rows");
    return points;
}

void run_fit(std::istream& in, FitInputKind kind, int n_bins, const std::string& provenance,
             std::ostream& out) {
    std::vector<GainAoaPoint> points;
    std::string source_note;
    if (kind == FitInputKind::bellhop_arrivals) {
        std::vector<Eigenray> rays;
        const ArrivalsData data = parse_bellhop_arrivals(in);
        for (std::size_t isrc = 0; isrc < data.source_depths_m.size(); ++isrc)
            for (std::size_t ird = 0; ird < data.receiver_depths_m.size(); ++ird)
                for (std::size_t irr = 0; irr < data.receiver_ranges_m.size(); ++irr) {
                    const auto cell = eigenrays_for_pair(data, isrc, ird, irr);
                    rays.insert(rays.end(), cell.begin(), cell.end());
                }
        points = bin_gain_vs_aoa(rays, n_bins);
        source_note = "rays = " + std::to_string(rays.size()) + ", bins = " +
                      std::to_string(n_bins);
    } else {
        // a CSV header naming gain_sq marks an already-binned gain table
        std::stringstream buffered;
        buffered << in.rdbuf();
        std::string header;
        {
            std::istringstream peek(buffered.str());
            while (std::getline(peek, header) && (header.empty() || header.front() == '#')) {
            }
        }
        std::istringstream text(buffered.str());
        if (kind == FitInputKind::gain_points ||
            header.find("gain_sq") != std::string::npos) {
            points = read_gain_points_csv(text);
            source_note = "pre-binned gain table";
        } else {
            const std::vector<Eigenray> rays = read_trace_csv(text);
            points = bin_gain_vs_aoa(rays, n_bins);
            source_note = "rays = " + std::to_string(rays.size()) + ", bins = " +
                          std::to_string(n_bins);
        }
    }

    out << "# uwacap fit: input = " << provenance << ", " << source_note
        << ", points = " << points.size() << '\n';
    if (points.size() == 1)
        out << "# warning: all rays share one AoA; a single bin was emitted and no fit is "
               "possible\n";
    const FitResult fit = fit_scaled_gaussian(points);
    if (!fit.converged)
        out << "# warning: fit did not converge; parameters are best-so-far\n";
    out << "lambda,xi_rad,varsigma_rad,sse,r2,rmse,converged,iterations\n";
    out << csv_num(fit.model.lambda) << ',' << csv_num(fit.model.xi) << ','
        << csv_num(fit.model.varsigma) << ',' << csv_num(fit.sse) << ',' << csv_num(fit.r2)
        << ',' << csv_num(fit.rmse) << ',' << (fit.converged ? "true" : "false") << ','
        << fit.iterations << '\n';
}

void run_capacity(const ExperimentConfig& config, std::ostream& out) {
    const PreparedModel model = prepare_model(config, config.scenario);
    write_provenance(config, "capacity", out);
    if (model.fitted && !model.fit_converged)
        out << "# warning: gain fit did not converge; parameters are best-so-far\n";
    out << "# capacity columns are in bits/s/Hz\n";
    out << "snr_db,c_mc_vector,c_mc_stderr,c_mc_siso,c_ub_closed,c_ub_quadrature\n";
    const SnrSpec snr = snr_from_db(config.snr_db);
    write_sweep_row(out, config.snr_db, model, config, snr);
}

void run_sweep(const ExperimentConfig& config, std::ostream& out) {
    if (!config.sweep)
        throw std::invalid_argument("sweep: config has no sweep.axis / sweep.values");
    const SweepSpec& sweep = *config.sweep;

    switch (sweep.axis) {
    case SweepSpec::Axis::snr_db: {
        const PreparedModel model = prepare_model(config, config.scenario);
        write_sweep_header(config, "snr_db", out);
        for (double snr_db : sweep.values)
            write_sweep_row(out, snr_db, model, config, snr_from_db(snr_db));
        break;
    }
    case SweepSpec::Axis::range_m:
    case SweepSpec::Axis::frequency_hz: {
        // re-trace and re-fit per point so the fitted gain map responds to
        // geometry and absorption
        write_sweep_header(config, to_string(sweep.axis), out);
        const SnrSpec snr = snr_from_db(config.snr_db);
        for (double value : sweep.values) {
            Scenario scenario = config.scenario;
            if (sweep.axis == SweepSpec::Axis::range_m) scenario.range_m = value;
            else scenario.frequency_hz = value;
            try {
                const PreparedModel model = prepare_model(config, scenario);
                write_sweep_row(out, value, model, config, snr);
            } catch (const std::exception& e) {
                throw std::runtime_error("sweep failed at " +
                                         std::string(to_string(sweep.axis)) + " = " +
                                         csv_num(value) + ": " + e.what());
            }
        }
        break;
    }
    case SweepSpec::Axis::n_rays: {
        // trace once with enough bounce orders for the largest requested ray
        // count, fit once on the full set, then truncate the delay-sorted list
        const int max_rays = static_cast<int>(sweep.values.back());
        const int needed_order = std::max(config.scenario.max_bounce_order, max_rays / 2);
        ExperimentConfig full = config;
        full.scenario.max_bounce_order = needed_order;
        full.n_rays = 0;
        const PreparedModel model = prepare_model(full, full.scenario);
        if (static_cast<std::size_t>(max_rays) > model.rays.size())
            throw std::invalid_argument("sweep: n_rays = " + std::to_string(max_rays) +
                                        " exceeds the " + std::to_string(model.rays.size()) +
                                        " traced rays");
        write_sweep_header(config, "n_rays", out);
        const SnrSpec snr = snr_from_db(config.snr_db);
        for (double value : sweep.values) {
            const auto n = static_cast<std::ptrdiff_t>(value);
            PreparedModel truncated = model;
            truncated.specs.models.erase(truncated.specs.models.begin() + n,
                                         truncated.specs.models.end());
            truncated.specs.delays_s.erase(truncated.specs.delays_s.begin() + n,
                                           truncated.specs.delays_s.end());
            write_sweep_row(out, value, truncated, config, snr);
        }
        break;
    }
    }
}

void run_compare(const ExperimentConfig& config, std::ostream& out) {
    if (!config.sweep || config.sweep->axis != SweepSpec::Axis::snr_db)
        throw std::invalid_argument("compare: config must set sweep.axis = snr_db with the SNR "
                                    "values to evaluate");

    const PreparedModel model = prepare_model(config, config.scenario);
    write_provenance(config, "compare", out);
    out << "# capacity columns are in bits/s/Hz\n";
    out << "snr_db,c_mc_vector,c_mc_vector_stderr,c_mc_siso,c_mc_siso_stderr,c_ub_closed\n";

    for (double snr_db : config.sweep->values) {
        const SnrSpec snr = snr_from_db(snr_db);
        const CapacityEstimate vec =
            ergodic_capacity_mc(model.specs.models, model.specs.delays_s, model.gain, snr,
                                config.trials, config.seed, McVariant::vector_sensor);
        const CapacityEstimate siso =
            ergodic_capacity_mc(model.specs.models, model.specs.delays_s, model.gain, snr,
                                config.trials, config.seed, McVariant::siso);
        const double ub = capacity_upper_bound_closed_form(model.specs.models, model.gain, snr);
        if (vec.mean > ub + 3.0 * vec.std_error)
            throw std::runtime_error("compare: Jensen dominance violated at snr_db = " +
                                     csv_num(snr_db) + " (c_mc_vector = " + csv_num(vec.mean) +
                                     ", c_ub = " + csv_num(ub) + ", stderr = " +
                                     csv_num(vec.std_error) + ")");
        out << csv_num(snr_db) << ',' << csv_num(vec.mean) << ',' << csv_num(vec.std_error)
            << ',' << csv_num(siso.mean) << ',' << csv_num(siso.std_error) << ',' << csv_num(ub)
            << '\n';
    }
}

} // namespace uwacap
