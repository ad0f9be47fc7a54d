// SPDX-License-Identifier: Apache-2.0
//
// uwacap - shallow-water acoustic channel modelling and vector-sensor
// capacity analysis toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "uwacap/commands.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<int> bins;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool needs_config) {
    auto* config = cmd->add_option("--config", opts.config_path, "experiment config file");
    if (needs_config) config->required();
    cmd->add_option("--out", opts.out_path, "output file (default: stdout)");
    cmd->add_option("--seed", opts.seed, "override the config seed");
    cmd->add_option("--trials", opts.trials, "override the config Monte-Carlo trial count");
    cmd->add_option("--bins", opts.bins, "override the config AoA bin count");
}

uwacap::ExperimentConfig load_with_overrides(const CommonOptions& opts) {
    uwacap::ExperimentConfig config = uwacap::load_experiment_config(opts.config_path);
    if (opts.seed) config.seed = *opts.seed;
    if (opts.trials) {
        if (*opts.trials < 1) throw std::invalid_argument("--trials must be >= 1");
        config.trials = *opts.trials;
    }
    if (opts.bins) {
        if (*opts.bins < 2) throw std::invalid_argument("--bins must be >= 2");
        config.bins = *opts.bins;
    }
    return config;
}

int with_output(const std::string& out_path, const std::function<void(std::ostream&)>& fn) {
    if (out_path.empty()) {
        fn(std::cout);
        return 0;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot open output file '" << out_path << "'\n";
        return 1;
    }
    fn(out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"shallow-water acoustic channel modelling and vector-sensor capacity "
                 "analysis"};
    app.require_subcommand(1);

    CommonOptions trace_opts, capacity_opts, sweep_opts, compare_opts;
    CommonOptions fit_opts, parse_opts;
    std::string in_path;
    std::string fit_in_path;
    std::string fit_format = "auto";

    CLI::App* trace = app.add_subcommand("trace", "trace eigenrays for a scenario");
    add_common(trace, trace_opts, true);

    CLI::App* parse_arrivals =
        app.add_subcommand("parse-arrivals", "parse an ASCII arrivals file into eigenray CSV");
    parse_arrivals->add_option("--in", in_path, "arrivals file")->required();
    parse_arrivals->add_option("--out", parse_opts.out_path, "output file (default: stdout)");

    CLI::App* fit = app.add_subcommand(
        "fit", "fit the AoA-dependent gain scale to binned eigenray statistics");
    fit->add_option("--in", fit_in_path,
                    "trace CSV, binned gain-table CSV, or ASCII arrivals file")
        ->required();
    fit->add_option("--format", fit_format, "input format: auto|csv|points|arr")
        ->check(CLI::IsMember({"auto", "csv", "points", "arr"}));
    fit->add_option("--bins", fit_opts.bins, "AoA bin count (default 15)");
    fit->add_option("--out", fit_opts.out_path, "output file (default: stdout)");

    CLI::App* capacity =
        app.add_subcommand("capacity", "capacity estimate and bounds at one SNR point");
    add_common(capacity, capacity_opts, true);

    CLI::App* sweep = app.add_subcommand("sweep", "capacity sweep along the configured axis");
    add_common(sweep, sweep_opts, true);

    CLI::App* compare = app.add_subcommand(
        "compare", "vector vs SISO capacity and the upper bound across SNR");
    add_common(compare, compare_opts, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (trace->parsed()) {
            const auto config = load_with_overrides(trace_opts);
            return with_output(trace_opts.out_path,
                               [&](std::ostream& out) { uwacap::run_trace(config, out); });
        }
        if (parse_arrivals->parsed()) {
            std::ifstream in(in_path);
            if (!in) {
                std::cerr << "error: cannot open input file '" << in_path << "'\n";
                return 1;
            }
            return with_output(parse_opts.out_path, [&](std::ostream& out) {
                uwacap::run_parse_arrivals(in, out);
            });
        }
        if (fit->parsed()) {
            std::ifstream in(fit_in_path);
            if (!in) {
                std::cerr << "error: cannot open input file '" << fit_in_path << "'\n";
                return 1;
            }
            uwacap::FitInputKind kind;
            if (fit_format == "csv") kind = uwacap::FitInputKind::trace_csv;
            else if (fit_format == "points") kind = uwacap::FitInputKind::gain_points;
            else if (fit_format == "arr") kind = uwacap::FitInputKind::bellhop_arrivals;
            else
                kind = fit_in_path.ends_with(".arr") ? uwacap::FitInputKind::bellhop_arrivals
                                                     : uwacap::FitInputKind::trace_csv;
            const int bins = fit_opts.bins.value_or(15);
            if (bins < 2) throw std::invalid_argument("--bins must be >= 2");
            return with_output(fit_opts.out_path, [&](std::ostream& out) {
                uwacap::run_fit(in, kind, bins, fit_in_path, out);
            });
        }
        if (capacity->parsed()) {
            const auto config = load_with_overrides(capacity_opts);
            return with_output(capacity_opts.out_path,
                               [&](std::ostream& out) { uwacap::run_capacity(config, out); });
        }
        if (sweep->parsed()) {
            const auto config = load_with_overrides(sweep_opts);
            return with_output(sweep_opts.out_path,
                               [&](std::ostream& out) { uwacap::run_sweep(config, out); });
        }
        if (compare->parsed()) {
            const auto config = load_with_overrides(compare_opts);
            return with_output(compare_opts.out_path,
                               [&](std::ostream& out) { uwacap::run_compare(config, out); });
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
