// SPDX-License-Identifier: Apache-2.0
//
// uwacap - shallow-water acoustic channel modelling and vector-sensor
// capacity analysis toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef UWACAP_ARRIVALS_HPP
#define UWACAP_ARRIVALS_HPP

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "uwacap/ray_geometry.hpp"

namespace uwacap {

// Reader/writer for the ASCII arrivals format produced by ray-tracing tools
// ('.arr'); the exact layout is documented in docs/arrivals_format.md and a
// fixture file is committed under tests/fixtures/.

// One arrival record as stored in the file. Angles are declination angles in
// degrees (positive below horizontal); `to_eigenray` converts the receiver
// angle to the library's AoA convention (radians, positive above horizontal).
struct ArrivalRecord {
    double amplitude;
    double phase_deg;
    double delay_s;
    double src_angle_deg;
    double rcv_angle_deg;
    int surface_bounces;
    int bottom_bounces;
};

struct ArrivalsData {
    double frequency_hz = 0.0;
    std::vector<double> source_depths_m;
    std::vector<double> receiver_depths_m;
    std::vector<double> receiver_ranges_m;
    // One arrival list per (source depth, receiver depth, receiver range),
    // source outermost, range innermost.
    std::vector<std::vector<ArrivalRecord>> arrivals;

    std::size_t pair_index(std::size_t isrc, std::size_t ird, std::size_t irr) const {
        return (isrc * receiver_depths_m.size() + ird) * receiver_ranges_m.size() + irr;
    }
};

// Parse error carrying the 1-based line number of the offending input.
class ArrivalsParseError : public std::runtime_error {
public:
    ArrivalsParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

ArrivalsData parse_bellhop_arrivals(std::istream& in);
void render_bellhop_arrivals(const ArrivalsData& data, std::ostream& out);

Eigenray to_eigenray(const ArrivalRecord& record);

// All arrivals of one (source, receiver depth, receiver range) cell.
std::vector<Eigenray> eigenrays_for_pair(const ArrivalsData& data, std::size_t isrc,
                                         std::size_t ird, std::size_t irr);

// Export helper: wraps traced rays as a single-source single-receiver
// arrivals data set (phase 0; launch angles reconstructed from the bounce
// parity of the isovelocity geometry).
ArrivalsData arrivals_from_eigenrays(std::span<const Eigenray> rays, const Scenario& scenario);

} // namespace uwacap

#endif // UWACAP_ARRIVALS_HPP
