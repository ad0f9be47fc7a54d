// SPDX-License-Identifier: Apache-2.0
//
// uwacap - shallow-water acoustic channel modelling and vector-sensor
// capacity analysis toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "uwacap/ray_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace uwacap {

namespace {

void require_positive(double value, const std::string& key) {
    if (!(value > 0.0))
        throw std::invalid_argument(key + " must be > 0 (got " + std::to_string(value) + ")");
}

struct ImageSource {
    double depth_m; // mirrored source depth, may lie outside [0, water_depth]
    int surface_bounces;
    int bottom_bounces;
};

// Mirror-image source depths for a waveguide bounded by the surface (z = 0)
// and the bottom (z = d), z measured downward. For total bounce count n there
// are exactly two rays: one whose first bounce is the surface, one whose
// first is the bottom:
//   n odd,  bottom first:  z* = (n+1)*d - z_s,  b = (n+1)/2, s = n - b
//   n odd,  surface first: z* = -(n-1)*d - z_s, s = (n+1)/2, b = n - s
//   n even, surface first: z* = n*d + z_s,      s = b = n/2
//   n even, bottom first:  z* = -n*d + z_s,     s = b = n/2
std::pair<ImageSource, ImageSource> images_for_order(int n, double z_s, double d) {
    if (n % 2 == 1) {
        const int k = (n + 1) / 2;
        return {ImageSource{(n + 1) * d - z_s, k - 1, k},
                ImageSource{-(n - 1) * d - z_s, k, k - 1}};
    }
    const int k = n / 2;
    return {ImageSource{n * d + z_s, k, k}, ImageSource{-n * d + z_s, k, k}};
}

Eigenray ray_from_image(const ImageSource& img, const Scenario& sc, double loss_db_per_m) {
    const double dz = img.depth_m - sc.rx_depth_m;
    const double length = std::hypot(sc.range_m, dz);

    // The unfolded ray is a straight line from the image source to the real
    // receiver, and its final leg is un-reflected, so the arrival elevation
    // is read off directly: the ray arrives ascending (positive AoA) exactly
    // when the image sits deeper than the receiver. The unfolded line also
    // fixes the grazing angle magnitude at every bottom contact.
    const double aoa = std::atan2(dz, sc.range_m);

    double amplitude = 1.0 / length;
    if (img.bottom_bounces > 0) {
        const double grazing = std::atan2(std::fabs(dz), sc.range_m);
        amplitude *= std::pow(bottom_reflection_coefficient(grazing, sc), img.bottom_bounces);
    }
    amplitude *= std::pow(10.0, -loss_db_per_m * length / 20.0);

    return Eigenray{aoa, length / sc.sound_speed_mps, amplitude, img.surface_bounces,
                    img.bottom_bounces};
}

} // namespace

void validate(const Scenario& sc, const char* key_prefix) {
    const std::string p = key_prefix;
    require_positive(sc.range_m, p + "range_m");
    require_positive(sc.water_depth_m, p + "water_depth_m");
    require_positive(sc.tx_depth_m, p + "tx_depth_m");
    require_positive(sc.rx_depth_m, p + "rx_depth_m");
    require_positive(sc.sound_speed_mps, p + "sound_speed_mps");
    require_positive(sc.frequency_hz, p + "frequency_hz");
    require_positive(sc.water_density_kgm3, p + "water_density_kgm3");
    require_positive(sc.bottom_speed_mps, p + "bottom_speed_mps");
    require_positive(sc.bottom_density_gcm3, p + "bottom_density_gcm3");
    if (sc.bottom_attenuation_db_lambda < 0.0)
        throw std::invalid_argument(p + "bottom_attenuation_db_lambda must be >= 0");
    require_positive(sc.noise_power, p + "noise_power");
    if (sc.tx_depth_m >= sc.water_depth_m)
        throw std::invalid_argument(p + "tx_depth_m must be < water_depth_m");
    if (sc.rx_depth_m >= sc.water_depth_m)
        throw std::invalid_argument(p + "rx_depth_m must be < water_depth_m");
    if (sc.max_bounce_order < 0)
        throw std::invalid_argument(p + "max_bounce_order must be >= 0");
}

std::vector<Eigenray> trace_image_method(const Scenario& sc) {
    validate(sc);

    const double loss_db_per_m = thorp_absorption_db_per_km(sc.frequency_hz) / 1000.0;

    std::vector<Eigenray> rays;
    rays.reserve(1 + 2 * static_cast<std::size_t>(sc.max_bounce_order));
    rays.push_back(ray_from_image(ImageSource{sc.tx_depth_m, 0, 0}, sc, loss_db_per_m));
    for (int n = 1; n <= sc.max_bounce_order; ++n) {
        const auto [bottom_first, surface_first] =
            images_for_order(n, sc.tx_depth_m, sc.water_depth_m);
        rays.push_back(ray_from_image(bottom_first, sc, loss_db_per_m));
        rays.push_back(ray_from_image(surface_first, sc, loss_db_per_m));
    }
    std::stable_sort(rays.begin(), rays.end(),
                     [](const Eigenray& a, const Eigenray& b) { return a.delay_s < b.delay_s; });
    return rays;
}

double bottom_reflection_coefficient(double grazing_rad, const Scenario& sc) {
    if (!(grazing_rad > 0.0 && grazing_rad <= std::numbers::pi / 2.0))
        throw std::invalid_argument("bottom_reflection_coefficient: grazing angle must lie in "
                                    "(0, pi/2]");

    const double rho_water = sc.water_density_kgm3;
    const double c_water = sc.sound_speed_mps;
    const double rho_bottom = sc.bottom_density_gcm3 * 1000.0; // g/cm^3 -> kg/m^3

    // Attenuation in dB per wavelength maps to the loss tangent of a complex
    // sound speed: c_b = c_p / (1 + i delta), delta = a_lambda / (40 pi log10 e).
    const double delta =
        sc.bottom_attenuation_db_lambda / (40.0 * std::numbers::pi * std::numbers::log10e);
    const std::complex<double> c_bottom = sc.bottom_speed_mps / std::complex<double>(1.0, delta);

    // Snell: cos(theta_b) = (c_b / c_w) cos(theta_w); the principal sqrt puts
    // the transmitted vertical wavenumber on the decaying branch.
    const std::complex<double> cos_b = (c_bottom / c_water) * std::cos(grazing_rad);
    const std::complex<double> sin_b = std::sqrt(1.0 - cos_b * cos_b);

    const std::complex<double> z_water = rho_water * c_water / std::sin(grazing_rad);
    const std::complex<double> z_bottom = rho_bottom * c_bottom / sin_b;
    return std::abs((z_bottom - z_water) / (z_bottom + z_water));
}

double thorp_absorption_db_per_km(double frequency_hz) {
    if (!(frequency_hz > 0.0))
        throw std::invalid_argument("thorp_absorption_db_per_km: frequency must be > 0");
    const double f = frequency_hz / 1000.0; // kHz
    const double f2 = f * f;
    return 0.11 * f2 / (1.0 + f2) + 44.0 * f2 / (4100.0 + f2) + 2.75e-4 * f2 + 0.003;
}

AoaSpecs eigenrays_to_aoa_specs(std::span<const Eigenray> rays, double beta_rad) {
    const std::vector<double> betas(rays.size(), beta_rad);
    return eigenrays_to_aoa_specs(rays, betas);
}

AoaSpecs eigenrays_to_aoa_specs(std::span<const Eigenray> rays,
                                std::span<const double> betas_rad) {
    if (rays.empty())
        throw std::invalid_argument("eigenrays_to_aoa_specs: ray set is empty");
    if (rays.size() != betas_rad.size())
        throw std::invalid_argument("eigenrays_to_aoa_specs: rays and betas differ in length");

    AoaSpecs specs;
    specs.models.reserve(rays.size());
    specs.delays_s.reserve(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) {
        specs.models.emplace_back(rays[i].aoa_rad, betas_rad[i]);
        specs.delays_s.push_back(rays[i].delay_s);
    }
    return specs;
}

} // namespace uwacap
