// SPDX-License-Identifier: Apache-2.0
//
// uwacap - shallow-water acoustic channel modelling and vector-sensor
// capacity analysis toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef UWACAP_CAPACITY_HPP
#define UWACAP_CAPACITY_HPP

#include <cstdint>
#include <span>

#include "uwacap/channel_model.hpp"

namespace uwacap {

// Capacity of the 1x3 SIMO link formed by a pressure sensor plus two
// particle-velocity components. The velocity channels carry half the ambient
// noise power of the pressure channel, which is where the factor-2 weights on
// the velocity energies come from; with cos^2 + sin^2 = 1 the instantaneous
// vector capacity collapses to log2(1 + 3 rho sum h_i^2).

// Receiver SNR, linear. `rho` > 0.
struct SnrSpec {
    double rho;
};

SnrSpec snr_from_db(double snr_db);
SnrSpec snr_from_powers(double signal_power, double noise_power);

struct CapacityEstimate {
    double mean;      // bits/s/Hz
    double std_error; // bits/s/Hz, sample std dev / sqrt(trials)
    std::uint64_t trials;
};

enum class McVariant { vector_sensor, siso };

// log2(1 + rho (e_p + 2 e_y + 2 e_z)); also evaluates the reduced form
// log2(1 + 3 rho e_p) and throws std::logic_error if the two disagree beyond
// roundoff (they are algebraically identical).
double instantaneous_capacity_vector(const ChannelRealization& realization, SnrSpec snr);

// Pressure channel alone: log2(1 + rho e_p).
double instantaneous_capacity_siso(const ChannelRealization& realization, SnrSpec snr);

// Monte-Carlo ergodic capacity over independent channel realizations.
// Draws use one substream per (seed, trial, path), so the estimate is
// bit-identical however trials are partitioned, and truncating or extending
// the path list leaves the surviving paths' draws unchanged (common random
// numbers across ray-count sweeps). `delays_s` must match `aoa_models` in
// length; delays do not enter the capacity of this static channel but are
// validated to keep call sites honest.
CapacityEstimate ergodic_capacity_mc(std::span<const TriangularAoaModel> aoa_models,
                                     std::span<const double> delays_s,
                                     const ScaledGaussianGainModel& gain_model, SnrSpec snr,
                                     std::uint64_t trials, std::uint64_t seed, McVariant variant,
                                     GainLaw law = GainLaw::rayleigh);

// Mean Rayleigh scale parameter of one path, integral of
// sigma^2(gamma) * p_i(gamma) over the triangular support by adaptive
// quadrature split at the density's kink (gamma = theta). The path's expected
// energy is rayleigh_second_moment_factor times this value.
// Throws std::runtime_error if the quadrature does not converge.
double per_path_expected_energy(const ScaledGaussianGainModel& gain_model,
                                const TriangularAoaModel& aoa_model);

// Closed form of the same integral (exponential + erf terms); switches to a
// Taylor expansion for beta << varsigma where the direct expression cancels.
// Derivation and the final expression are in docs/capacity_bound.md.
double per_path_expected_energy_closed_form(const ScaledGaussianGainModel& gain_model,
                                            const TriangularAoaModel& aoa_model);

// Jensen upper bound log2(1 + 3 rho sum_i E[h_i^2]) with the per-path
// expected energies evaluated in closed form / by adaptive quadrature.
// The two must agree to ~1e-9 relative; the quadrature version is the oracle.
double capacity_upper_bound_closed_form(std::span<const TriangularAoaModel> aoa_models,
                                        const ScaledGaussianGainModel& gain_model, SnrSpec snr);
double capacity_upper_bound_quadrature(std::span<const TriangularAoaModel> aoa_models,
                                       const ScaledGaussianGainModel& gain_model, SnrSpec snr);

// sum_i rayleigh_second_moment_factor * per_path_expected_energy(i), the mean
// channel energy entering both bounds (closed_form selects the evaluation).
double expected_channel_energy(std::span<const TriangularAoaModel> aoa_models,
                               const ScaledGaussianGainModel& gain_model, bool closed_form);

} // namespace uwacap

#endif // UWACAP_CAPACITY_HPP
