// SPDX-License-Identifier: Apache-2.0
//
// uwacap - shallow-water acoustic channel modelling and vector-sensor
// capacity analysis toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "uwacap/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace uwacap {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

class KeyValueConfig {
public:
    explicit KeyValueConfig(std::istream& in) {
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (const auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": expected 'key = value', got '" + line + "'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty())
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": empty key");
            if (!entries_.emplace(key, value).second)
                throw std::invalid_argument("config: duplicate key '" + key + "'");
        }
    }

    std::optional<std::string> raw(const std::string& key) {
        consumed_.insert(key);
        const auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    double get_double(const std::string& key, double fallback) {
        const auto v = raw(key);
        if (!v) return fallback;
        return parse_double(key, *v);
    }

    std::int64_t get_int(const std::string& key, std::int64_t fallback) {
        const auto v = raw(key);
        if (!v) return fallback;
        std::int64_t out = 0;
        const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
        if (ec != std::errc{} || ptr != v->data() + v->size())
            throw std::invalid_argument("config: " + key + " must be an integer, got '" + *v +
                                        "'");
        return out;
    }

    bool get_bool(const std::string& key, bool fallback) {
        const auto v = raw(key);
        if (!v) return fallback;
        if (*v == "true") return true;
        if (*v == "false") return false;
        throw std::invalid_argument("config: " + key + " must be 'true' or 'false', got '" + *v +
                                    "'");
    }

    std::vector<double> get_double_list(const std::string& key) {
        const auto v = raw(key);
        if (!v) return {};
        std::vector<double> out;
        std::stringstream ss(*v);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty())
                throw std::invalid_argument("config: " + key + " contains an empty element");
            out.push_back(parse_double(key, item));
        }
        return out;
    }

    void reject_unconsumed() const {
        for (const auto& [key, value] : entries_) {
            if (!consumed_.contains(key))
                throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }

private:
    static double parse_double(const std::string& key, const std::string& text) {
        double out = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw std::invalid_argument("config: " + key + " must be a number, got '" + text +
                                        "'");
        return out;
    }

    std::map<std::string, std::string> entries_;
    std::set<std::string> consumed_;
};

std::string format_value(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace

const char* to_string(SweepSpec::Axis axis) {
    switch (axis) {
    case SweepSpec::Axis::snr_db: return "snr_db";
    case SweepSpec::Axis::range_m: return "range_m";
    case SweepSpec::Axis::frequency_hz: return "frequency_hz";
    case SweepSpec::Axis::n_rays: return "n_rays";
    }
    return "?";
}

ExperimentConfig parse_experiment_config(std::istream& in) {
    KeyValueConfig kv(in);
    ExperimentConfig config;

    Scenario& sc = config.scenario;
    sc.range_m = kv.get_double("scenario.range_m", sc.range_m);
    sc.water_depth_m = kv.get_double("scenario.water_depth_m", sc.water_depth_m);
    sc.tx_depth_m = kv.get_double("scenario.tx_depth_m", sc.tx_depth_m);
    sc.rx_depth_m = kv.get_double("scenario.rx_depth_m", sc.rx_depth_m);
    sc.sound_speed_mps = kv.get_double("scenario.sound_speed_mps", sc.sound_speed_mps);
    sc.frequency_hz = kv.get_double("scenario.frequency_hz", sc.frequency_hz);
    sc.water_density_kgm3 = kv.get_double("scenario.water_density_kgm3", sc.water_density_kgm3);
    sc.bottom_speed_mps = kv.get_double("scenario.bottom_speed_mps", sc.bottom_speed_mps);
    sc.bottom_density_gcm3 = kv.get_double("scenario.bottom_density_gcm3",
                                           sc.bottom_density_gcm3);
    sc.bottom_attenuation_db_lambda =
        kv.get_double("scenario.bottom_attenuation_db_lambda", sc.bottom_attenuation_db_lambda);
    sc.noise_power = kv.get_double("scenario.noise_power", sc.noise_power);
    sc.max_bounce_order =
        static_cast<int>(kv.get_int("scenario.max_bounce_order", sc.max_bounce_order));
    validate(sc);

    config.beta_rad = kv.get_double("beta_rad", config.beta_rad);
    if (config.beta_rad < 0.0)
        throw std::invalid_argument("config: beta_rad must be >= 0");

    if (const auto mode = kv.raw("gain.mode")) {
        if (*mode == "fit") config.gain.mode = GainConfig::Mode::fit;
        else if (*mode == "explicit") config.gain.mode = GainConfig::Mode::explicit_params;
        else
            throw std::invalid_argument(
                "config: gain.mode must be 'fit' or 'explicit', got '" + *mode + "'");
    }
    config.gain.lambda = kv.get_double("gain.lambda", config.gain.lambda);
    config.gain.xi_rad = kv.get_double("gain.xi_rad", config.gain.xi_rad);
    config.gain.varsigma_rad = kv.get_double("gain.varsigma_rad", config.gain.varsigma_rad);
    config.gain.normalize_energy =
        kv.get_bool("gain.normalize_energy", config.gain.normalize_energy);
    if (config.gain.mode == GainConfig::Mode::explicit_params) {
        if (!(config.gain.lambda > 0.0))
            throw std::invalid_argument("config: gain.lambda must be > 0");
        if (!(config.gain.varsigma_rad > 0.0))
            throw std::invalid_argument("config: gain.varsigma_rad must be > 0");
    }

    const std::int64_t trials = kv.get_int("trials", static_cast<std::int64_t>(config.trials));
    if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    config.trials = static_cast<std::uint64_t>(trials);

    const std::int64_t seed = kv.get_int("seed", static_cast<std::int64_t>(config.seed));
    if (seed < 0) throw std::invalid_argument("config: seed must be >= 0");
    config.seed = static_cast<std::uint64_t>(seed);

    config.bins = static_cast<int>(kv.get_int("bins", config.bins));
    if (config.bins < 2) throw std::invalid_argument("config: bins must be >= 2");

    config.n_rays = static_cast<int>(kv.get_int("n_rays", config.n_rays));
    if (config.n_rays < 0) throw std::invalid_argument("config: n_rays must be >= 0");

    config.snr_db = kv.get_double("snr_db", config.snr_db);

    if (const auto axis = kv.raw("sweep.axis")) {
        SweepSpec sweep;
        if (*axis == "snr_db") sweep.axis = SweepSpec::Axis::snr_db;
        else if (*axis == "range_m") sweep.axis = SweepSpec::Axis::range_m;
        else if (*axis == "frequency_hz") sweep.axis = SweepSpec::Axis::frequency_hz;
        else if (*axis == "n_rays") sweep.axis = SweepSpec::Axis::n_rays;
        else
            throw std::invalid_argument("config: sweep.axis must be one of snr_db, range_m, "
                                        "frequency_hz, n_rays; got '" + *axis + "'");
        sweep.values = kv.get_double_list("sweep.values");
        if (sweep.values.empty())
            throw std::invalid_argument("config: sweep.values must be a nonempty list");
        for (std::size_t i = 1; i < sweep.values.size(); ++i) {
            if (!(sweep.values[i] > sweep.values[i - 1]))
                throw std::invalid_argument("config: sweep.values must be strictly increasing");
        }
        if (sweep.axis != SweepSpec::Axis::snr_db) {
            for (double v : sweep.values) {
                if (!(v > 0.0))
                    throw std::invalid_argument("config: sweep.values must be > 0 for axis " +
                                                std::string(to_string(sweep.axis)));
            }
        }
        if (sweep.axis == SweepSpec::Axis::n_rays) {
            for (double v : sweep.values) {
                if (v != std::floor(v) || v < 1.0)
                    throw std::invalid_argument(
                        "config: sweep.values must be integers >= 1 for axis n_rays");
            }
        }
        config.sweep = sweep;
    } else if (kv.raw("sweep.values")) {
        throw std::invalid_argument("config: sweep.values given without sweep.axis");
    }

    kv.reject_unconsumed();
    return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    return parse_experiment_config(in);
}

std::vector<std::string> describe(const ExperimentConfig& c) {
    std::vector<std::string> lines;
    const auto add = [&lines](const std::string& key, const std::string& value) {
        lines.push_back(key + " = " + value);
    };
    add("scenario.range_m", format_value(c.scenario.range_m));
    add("scenario.water_depth_m", format_value(c.scenario.water_depth_m));
    add("scenario.tx_depth_m", format_value(c.scenario.tx_depth_m));
    add("scenario.rx_depth_m", format_value(c.scenario.rx_depth_m));
    add("scenario.sound_speed_mps", format_value(c.scenario.sound_speed_mps));
    add("scenario.frequency_hz", format_value(c.scenario.frequency_hz));
    add("scenario.water_density_kgm3", format_value(c.scenario.water_density_kgm3));
    add("scenario.bottom_speed_mps", format_value(c.scenario.bottom_speed_mps));
    add("scenario.bottom_density_gcm3", format_value(c.scenario.bottom_density_gcm3));
    add("scenario.bottom_attenuation_db_lambda",
        format_value(c.scenario.bottom_attenuation_db_lambda));
    add("scenario.noise_power", format_value(c.scenario.noise_power));
    add("scenario.max_bounce_order", std::to_string(c.scenario.max_bounce_order));
    add("beta_rad", format_value(c.beta_rad));
    add("gain.mode", c.gain.mode == GainConfig::Mode::fit ? "fit" : "explicit");
    if (c.gain.mode == GainConfig::Mode::explicit_params) {
        add("gain.lambda", format_value(c.gain.lambda));
        add("gain.xi_rad", format_value(c.gain.xi_rad));
        add("gain.varsigma_rad", format_value(c.gain.varsigma_rad));
    }
    add("gain.normalize_energy", c.gain.normalize_energy ? "true" : "false");
    add("trials", std::to_string(c.trials));
    add("seed", std::to_string(c.seed));
    add("bins", std::to_string(c.bins));
    add("n_rays", std::to_string(c.n_rays));
    add("snr_db", format_value(c.snr_db));
    if (c.sweep) {
        add("sweep.axis", to_string(c.sweep->axis));
        std::string values;
        for (std::size_t i = 0; i < c.sweep->values.size(); ++i) {
            if (i) values += ",";
            values += format_value(c.sweep->values[i]);
        }
        add("sweep.values", values);
    }
    return lines;
}

} // namespace uwacap
