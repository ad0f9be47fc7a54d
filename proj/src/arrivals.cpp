// SPDX-License-Identifier: Apache-2.0
//
// uwacap - shallow-water acoustic channel modelling and vector-sensor
// capacity analysis toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "uwacap/arrivals.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <utility>

namespace uwacap {

namespace {

// Whitespace tokenizer that remembers which line every token came from, so
// parse errors can point at the offending input.
class TokenReader {
public:
    explicit TokenReader(std::istream& in) {
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) tokens_.emplace_back(lineno, std::move(tok));
        }
        last_line_ = lineno;
    }

    bool exhausted() const noexcept { return pos_ >= tokens_.size(); }

    int current_line() const noexcept {
        return exhausted() ? last_line_ : tokens_[pos_].first;
    }

    const std::string& next(const char* what) {
        if (exhausted())
            throw ArrivalsParseError(last_line_,
                                     std::string("unexpected end of input, expected ") + what);
        return tokens_[pos_++].second;
    }

    double next_double(const char* what) {
        const int line = current_line();
        const std::string& tok = next(what);
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
            throw ArrivalsParseError(line, std::string("expected a number for ") + what +
                                               ", got '" + tok + "'");
        return value;
    }

    int next_count(const char* what, int min_value) {
        const int line = current_line();
        const std::string& tok = next(what);
        int value = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
            throw ArrivalsParseError(line, std::string("expected an integer for ") + what +
                                               ", got '" + tok + "'");
        if (value < min_value)
            throw ArrivalsParseError(line, std::string(what) + " must be >= " +
                                               std::to_string(min_value) + ", got '" + tok + "'");
        return value;
    }

private:
    std::vector<std::pair<int, std::string>> tokens_;
    std::size_t pos_ = 0;
    int last_line_ = 0;
};

std::vector<double> read_axis(TokenReader& reader, const char* count_name,
                              const char* value_name) {
    const int n = reader.next_count(count_name, 1);
    std::vector<double> values(static_cast<std::size_t>(n));
    for (double& v : values) v = reader.next_double(value_name);
    return values;
}

void write_double(std::ostream& out, double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, ptr - buf);
    (void)ec;
}

} // namespace

ArrivalsData parse_bellhop_arrivals(std::istream& in) {
    TokenReader reader(in);

    ArrivalsData data;
    data.frequency_hz = reader.next_double("frequency");
    if (!(data.frequency_hz > 0.0))
        throw ArrivalsParseError(1, "frequency must be > 0");
    data.source_depths_m = read_axis(reader, "source depth count", "source depth");
    data.receiver_depths_m = read_axis(reader, "receiver depth count", "receiver depth");
    data.receiver_ranges_m = read_axis(reader, "receiver range count", "receiver range");

    const std::size_t nsd = data.source_depths_m.size();
    const std::size_t nrd = data.receiver_depths_m.size();
    const std::size_t nrr = data.receiver_ranges_m.size();
    data.arrivals.resize(nsd * nrd * nrr);

    for (std::size_t isrc = 0; isrc < nsd; ++isrc) {
        reader.next_count("max arrival count", 0); // advisory, not validated further
        for (std::size_t ird = 0; ird < nrd; ++ird) {
            for (std::size_t irr = 0; irr < nrr; ++irr) {
                const int narr = reader.next_count("arrival count", 0);
                auto& cell = data.arrivals[data.pair_index(isrc, ird, irr)];
                cell.reserve(static_cast<std::size_t>(narr));
                for (int i = 0; i < narr; ++i) {
                    ArrivalRecord rec;
                    rec.amplitude = reader.next_double("amplitude");
                    rec.phase_deg = reader.next_double("phase");
                    rec.delay_s = reader.next_double("delay");
                    rec.src_angle_deg = reader.next_double("source angle");
                    rec.rcv_angle_deg = reader.next_double("receiver angle");
                    rec.surface_bounces = reader.next_count("surface bounce count", 0);
                    rec.bottom_bounces = reader.next_count("bottom bounce count", 0);
                    cell.push_back(rec);
                }
            }
        }
    }

    if (!reader.exhausted())
        throw ArrivalsParseError(reader.current_line(), "unexpected trailing data");
    return data;
}

void render_bellhop_arrivals(const ArrivalsData& data, std::ostream& out) {
    write_double(out, data.frequency_hz);
    out << '\n';

    for (const std::vector<double>* axis :
         {&data.source_depths_m, &data.receiver_depths_m, &data.receiver_ranges_m}) {
        out << axis->size();
        for (double v : *axis) {
            out << ' ';
            write_double(out, v);
        }
        out << '\n';
    }

    const std::size_t nrd = data.receiver_depths_m.size();
    const std::size_t nrr = data.receiver_ranges_m.size();
    for (std::size_t isrc = 0; isrc < data.source_depths_m.size(); ++isrc) {
        std::size_t max_arrivals = 0;
        for (std::size_t ird = 0; ird < nrd; ++ird)
            for (std::size_t irr = 0; irr < nrr; ++irr)
                max_arrivals = std::max(max_arrivals,
                                        data.arrivals[data.pair_index(isrc, ird, irr)].size());
        out << max_arrivals << '\n';
        for (std::size_t ird = 0; ird < nrd; ++ird) {
            for (std::size_t irr = 0; irr < nrr; ++irr) {
                const auto& cell = data.arrivals[data.pair_index(isrc, ird, irr)];
                out << cell.size() << '\n';
                for (const ArrivalRecord& rec : cell) {
                    write_double(out, rec.amplitude);
                    out << ' ';
                    write_double(out, rec.phase_deg);
                    out << ' ';
                    write_double(out, rec.delay_s);
                    out << ' ';
                    write_double(out, rec.src_angle_deg);
                    out << ' ';
                    write_double(out, rec.rcv_angle_deg);
                    out << ' ' << rec.surface_bounces << ' ' << rec.bottom_bounces << '\n';
                }
            }
        }
    }
}

Eigenray to_eigenray(const ArrivalRecord& rec) {
    if (rec.amplitude < 0.0)
        throw std::invalid_argument("arrival amplitude must be >= 0");
    if (rec.delay_s < 0.0)
        throw std::invalid_argument("arrival delay must be >= 0");
    // file stores declination (positive below horizontal); AoA is elevation
    const double aoa_rad = -rec.rcv_angle_deg * std::numbers::pi / 180.0;
    return Eigenray{aoa_rad, rec.delay_s, rec.amplitude, rec.surface_bounces,
                    rec.bottom_bounces};
}

std::vector<Eigenray> eigenrays_for_pair(const ArrivalsData& data, std::size_t isrc,
                                         std::size_t ird, std::size_t irr) {
    const auto& cell = data.arrivals.at(data.pair_index(isrc, ird, irr));
    std::vector<Eigenray> rays;
    rays.reserve(cell.size());
    for (const ArrivalRecord& rec : cell) rays.push_back(to_eigenray(rec));
    return rays;
}

ArrivalsData arrivals_from_eigenrays(std::span<const Eigenray> rays, const Scenario& scenario) {
    ArrivalsData data;
    data.frequency_hz = scenario.frequency_hz;
    data.source_depths_m = {scenario.tx_depth_m};
    data.receiver_depths_m = {scenario.rx_depth_m};
    data.receiver_ranges_m = {scenario.range_m};
    data.arrivals.resize(1);
    auto& cell = data.arrivals.front();
    cell.reserve(rays.size());
    for (const Eigenray& ray : rays) {
        const int bounces = ray.surface_bounces + ray.bottom_bounces;
        // every bounce flips the vertical direction, so the launch elevation
        // is the arrival elevation times (-1)^bounces; declination negates
        const double rcv_decl_deg = -ray.aoa_rad * 180.0 / std::numbers::pi;
        const double src_decl_deg = (bounces % 2 == 0) ? rcv_decl_deg : -rcv_decl_deg;
        cell.push_back(ArrivalRecord{ray.amplitude, 0.0, ray.delay_s, src_decl_deg,
                                     rcv_decl_deg, ray.surface_bounces, ray.bottom_bounces});
    }
    return data;
}

} // namespace uwacap
