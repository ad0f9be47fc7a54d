// SPDX-License-Identifier: Apache-2.0
//
// uwacap - shallow-water acoustic channel modelling and vector-sensor
// capacity analysis toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef UWACAP_RAY_GEOMETRY_HPP
#define UWACAP_RAY_GEOMETRY_HPP

#include <span>
#include <vector>

#include "uwacap/channel_model.hpp"

namespace uwacap {

// Geometry, acoustics and noise description of one shallow-water link.
// Depths are measured downward from the sea surface. Defaults follow the
// 250 m water column / 1 km range configuration used by the bundled recipes.
struct Scenario {
    double range_m = 1000.0;
    double water_depth_m = 250.0;
    double tx_depth_m = 150.0;
    double rx_depth_m = 130.0;
    double sound_speed_mps = 1520.0;
    double frequency_hz = 12000.0;
    double water_density_kgm3 = 1027.0;
    double bottom_speed_mps = 1550.0;
    double bottom_density_gcm3 = 1.8;
    double bottom_attenuation_db_lambda = 0.6; // dB per wavelength in the bottom
    double noise_power = 1.3e-8;               // ambient noise power, linear
    int max_bounce_order = 8;                  // max surface+bottom bounces per ray
};

// Throws std::invalid_argument naming the offending field (prefixed with
// `key_prefix` so config-level messages carry the config key).
void validate(const Scenario& scenario, const char* key_prefix = "scenario.");

// One geometric arrival. AoA sign convention: the angle of the propagation
// direction above horizontal at the receiver, so a ray still ascending when
// it arrives (last bounce at the bottom, or a line-of-sight path from a
// deeper source) has positive AoA and a ray descending out of its last
// surface bounce has negative AoA. The line-of-sight AoA is therefore
// atan((tx_depth - rx_depth) / range).
struct Eigenray {
    double aoa_rad;
    double delay_s;
    double amplitude; // deterministic path magnitude (phase discarded)
    int surface_bounces;
    int bottom_bounces;
};

// Isovelocity image-method tracer. Enumerates the line-of-sight path plus
// two rays per bounce order n = 1..max_bounce_order (one surface-first, one
// bottom-first), so the ray count is exactly 1 + 2*max_bounce_order. Each
// amplitude is 1/L spherical spreading times the bottom reflection magnitude
// per bottom bounce times Thorp absorption over the path; surface reflections
// have magnitude 1. Rays are sorted by delay; the first is the LoS path.
std::vector<Eigenray> trace_image_method(const Scenario& scenario);

// Two-fluid (Rayleigh) reflection magnitude at the water/bottom interface for
// a given grazing angle, with the bottom's dB-per-wavelength attenuation
// folded into a complex bottom sound speed. Throws std::invalid_argument for
// grazing angles outside (0, pi/2].
double bottom_reflection_coefficient(double grazing_rad, const Scenario& scenario);

// Thorp empirical seawater absorption, dB per km, frequency in Hz (> 0).
double thorp_absorption_db_per_km(double frequency_hz);

// Per-path AoA densities plus the delays carried through from the rays.
struct AoaSpecs {
    std::vector<TriangularAoaModel> models;
    std::vector<double> delays_s;
};

// theta_i = ray AoA, beta_i = the global half-width (or one value per ray in
// the second overload). Throws std::invalid_argument on an empty ray set.
AoaSpecs eigenrays_to_aoa_specs(std::span<const Eigenray> rays, double beta_rad);
AoaSpecs eigenrays_to_aoa_specs(std::span<const Eigenray> rays,
                                std::span<const double> betas_rad);

} // namespace uwacap

#endif // UWACAP_RAY_GEOMETRY_HPP
