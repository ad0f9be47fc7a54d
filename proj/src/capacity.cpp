// SPDX-License-Identifier: Apache-2.0
//
// uwacap - shallow-water acoustic channel modelling and vector-sensor
// capacity analysis toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "uwacap/capacity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "uwacap/quadrature.hpp"
#include "uwacap/special_functions.hpp"

namespace uwacap {

SnrSpec snr_from_db(double snr_db) {
    return SnrSpec{std::pow(10.0, snr_db / 10.0)};
}

SnrSpec snr_from_powers(double signal_power, double noise_power) {
    if (!(signal_power > 0.0))
        throw std::invalid_argument("snr_from_powers: signal power must be > 0");
    if (!(noise_power > 0.0))
        throw std::invalid_argument("snr_from_powers: noise power must be > 0");
    return SnrSpec{signal_power / noise_power};
}

double instantaneous_capacity_vector(const ChannelRealization& realization, SnrSpec snr) {
    const ComponentEnergies e = component_energies(realization);
    const double direct = std::log2(1.0 + snr.rho * (e.pressure + 2.0 * e.range + 2.0 * e.depth));
    const double reduced = std::log2(1.0 + 3.0 * snr.rho * e.pressure);
    if (std::fabs(direct - reduced) > 1e-9 * std::max(1.0, std::fabs(direct)))
        throw std::logic_error("instantaneous_capacity_vector: energy identity violated");
    return direct;
}

double instantaneous_capacity_siso(const ChannelRealization& realization, SnrSpec snr) {
    return std::log2(1.0 + snr.rho * component_energies(realization).pressure);
}

CapacityEstimate ergodic_capacity_mc(std::span<const TriangularAoaModel> aoa_models,
                                     std::span<const double> delays_s,
                                     const ScaledGaussianGainModel& gain_model, SnrSpec snr,
                                     std::uint64_t trials, std::uint64_t seed, McVariant variant,
                                     GainLaw law) {
    if (aoa_models.empty())
        throw std::invalid_argument("ergodic_capacity_mc: path list is empty");
    if (aoa_models.size() != delays_s.size())
        throw std::invalid_argument("ergodic_capacity_mc: aoa_models and delays differ in length");
    if (trials < 1)
        throw std::invalid_argument("ergodic_capacity_mc: trials must be >= 1");

    double mean = 0.0;
    double m2 = 0.0; // sum of squared deviations (Welford)
    for (std::uint64_t t = 0; t < trials; ++t) {
        double e_p = 0.0, e_y = 0.0, e_z = 0.0;
        for (std::size_t i = 0; i < aoa_models.size(); ++i) {
            RandomStream rng = RandomStream::for_trial_path(seed, t, i);
            const double gamma = sample_aoa(aoa_models[i], rng);
            const double gain =
                law == GainLaw::rayleigh
                    ? sample_path_gain(gain_model, gamma, rng)
                    : std::sqrt(rayleigh_second_moment_factor *
                                sigma_squared(gain_model, gamma));
            const double h2 = gain * gain;
            const double c = std::cos(gamma);
            const double s = std::sin(gamma);
            e_p += h2;
            e_y += h2 * c * c;
            e_z += h2 * s * s;
        }
        const double capacity =
            variant == McVariant::vector_sensor
                ? std::log2(1.0 + snr.rho * (e_p + 2.0 * e_y + 2.0 * e_z))
                : std::log2(1.0 + snr.rho * e_p);
        const double delta = capacity - mean;
        mean += delta / static_cast<double>(t + 1);
        m2 += delta * (capacity - mean);
    }
    const double std_error =
        trials > 1 ? std::sqrt(m2 / static_cast<double>(trials - 1)) /
                         std::sqrt(static_cast<double>(trials))
                   : 0.0;
    return CapacityEstimate{mean, std_error, trials};
}

double per_path_expected_energy(const ScaledGaussianGainModel& gain_model,
                                const TriangularAoaModel& aoa_model) {
    if (aoa_model.beta == 0.0) return sigma_squared(gain_model, aoa_model.theta);

    const auto integrand = [&](double gamma) {
        return sigma_squared(gain_model, gamma) * triangular_density(aoa_model, gamma);
    };
    const double lo = aoa_model.theta - aoa_model.beta;
    const double hi = aoa_model.theta + aoa_model.beta;
    // split at the density's kink; tolerances scale off a coarse estimate so
    // the result is accurate in relative terms whatever lambda's magnitude
    return adaptive_simpson_rel(integrand, lo, aoa_model.theta, 1e-13) +
           adaptive_simpson_rel(integrand, aoa_model.theta, hi, 1e-13);
}

double per_path_expected_energy_closed_form(const ScaledGaussianGainModel& gain_model,
                                            const TriangularAoaModel& aoa_model) {
    if (aoa_model.beta == 0.0) return sigma_squared(gain_model, aoa_model.theta);

    const double m = (aoa_model.theta - gain_model.xi) / gain_model.varsigma;
    const double eps = aoa_model.beta / gain_model.varsigma;

    // For beta << varsigma the exact expression cancels catastrophically;
    // the quadratic expansion about the point mass is accurate to O(eps^4).
    if (eps < 3e-3) {
        const double peak = sigma_squared(gain_model, aoa_model.theta);
        return peak * (1.0 + eps * eps * (2.0 * m * m - 1.0) / 6.0);
    }

    const double a = m - eps;
    const double b = m + eps;
    const double exp_part =
        0.5 * (std::exp(-a * a) + std::exp(-b * b) - 2.0 * std::exp(-m * m));
    const double erf_part = 0.5 * std::sqrt(std::numbers::pi) *
                            (a * erf_eval(a) + b * erf_eval(b) - (a + b) * erf_eval(m));
    return gain_model.lambda * (exp_part + erf_part) / (eps * eps);
}

double expected_channel_energy(std::span<const TriangularAoaModel> aoa_models,
                               const ScaledGaussianGainModel& gain_model, bool closed_form) {
    double sum = 0.0;
    for (const TriangularAoaModel& aoa : aoa_models) {
        sum += closed_form ? per_path_expected_energy_closed_form(gain_model, aoa)
                           : per_path_expected_energy(gain_model, aoa);
    }
    return rayleigh_second_moment_factor * sum;
}

double capacity_upper_bound_closed_form(std::span<const TriangularAoaModel> aoa_models,
                                        const ScaledGaussianGainModel& gain_model, SnrSpec snr) {
    return std::log2(1.0 + 3.0 * snr.rho * expected_channel_energy(aoa_models, gain_model, true));
}

double capacity_upper_bound_quadrature(std::span<const TriangularAoaModel> aoa_models,
                                       const ScaledGaussianGainModel& gain_model, SnrSpec snr) {
    return std::log2(1.0 + 3.0 * snr.rho * expected_channel_energy(aoa_models, gain_model, false));
}

} // namespace uwacap
