// SPDX-License-Identifier: Apache-2.0
//
// uwacap - shallow-water acoustic channel modelling and vector-sensor
// capacity analysis toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef UWACAP_CHANNEL_MODEL_HPP
#define UWACAP_CHANNEL_MODEL_HPP

#include <span>
#include <vector>

#include "uwacap/random.hpp"

namespace uwacap {

// Statistical multipath model: each path carries an angle of arrival (AoA)
// drawn from a narrow per-path density and a Rayleigh-distributed gain whose
// scale parameter depends on that AoA through a scaled-Gaussian map. All
// types are immutable values after construction; all sampling operations are
// pure given an explicit RandomStream, so values can be shared freely across
// threads.

// Rayleigh convention used throughout: the density of a gain alpha with scale
// parameter sigma^2 is (alpha/sigma^2) exp(-alpha^2 / (2 sigma^2)), whose
// second moment is E[alpha^2] = 2 sigma^2. Every place that converts a scale
// parameter into an expected energy multiplies by this factor.
inline constexpr double rayleigh_second_moment_factor = 2.0;

// Maps an AoA gamma to the Rayleigh scale parameter
//   sigma^2(gamma) = lambda * exp(-((gamma - xi) / varsigma)^2),
// the peak value `lambda` being attained exactly at gamma = xi.
struct ScaledGaussianGainModel {
    double lambda;   // peak energy scale, > 0
    double xi;       // AoA of the peak, radians
    double varsigma; // spread, radians, > 0

    ScaledGaussianGainModel(double lambda_, double xi_, double varsigma_);
};

// Symmetric triangular AoA density with mode `theta` and half-width `beta`;
// support is exactly [theta - beta, theta + beta], peak value 1/beta.
// beta == 0 is accepted as a point mass at theta.
struct TriangularAoaModel {
    double theta; // mode, radians
    double beta;  // half-width, radians, >= 0

    TriangularAoaModel(double theta_, double beta_);
};

// Truncated Gaussian / Laplacian AoA density on [mu - pi/2, mu + pi/2], kept
// for comparison against the triangular model. The normalizer is recomputed
// by quadrature at construction, never user-supplied.
struct TruncatedAoaModel {
    enum class Kind { gaussian, laplacian };

    Kind kind;
    double mu;         // mean, radians
    double sigma;      // spread, radians, > 0
    double normalizer; // computed so the density integrates to 1

    TruncatedAoaModel(Kind kind_, double mu_, double sigma_);
};

// One arrival of a sampled channel: gain, AoA, delay.
// Invariants: amplitude >= 0, |aoa_rad| < pi/2, delay_s >= 0.
struct PathArrival {
    double amplitude;
    double aoa_rad;
    double delay_s;
};

struct ChannelRealization {
    std::vector<PathArrival> paths; // length N >= 1
};

// Energies seen by the three receive components: pressure (sum h_i^2), and
// the range/depth particle-velocity projections (cos^2 / sin^2 weighted).
// pressure == range + depth up to floating-point roundoff.
struct ComponentEnergies {
    double pressure;
    double range;
    double depth;
};

double sigma_squared(const ScaledGaussianGainModel& model, double gamma) noexcept;

// Rayleigh density (alpha/sigma2) exp(-alpha^2/(2 sigma2)).
// Throws std::invalid_argument for sigma2 <= 0 or alpha < 0.
double rayleigh_gain_density(double sigma2, double alpha);

// Inverse-CDF transform: alpha = sqrt(-2 sigma2 ln u), u in (0, 1].
double rayleigh_from_uniform(double sigma2, double u) noexcept;

double sample_path_gain(const ScaledGaussianGainModel& model, double gamma,
                        RandomStream& rng) noexcept;

double triangular_density(const TriangularAoaModel& model, double gamma) noexcept;
double truncated_density(const TruncatedAoaModel& model, double gamma) noexcept;

// Closed-form inverse CDF of the triangular density, u in [0, 1];
// u = 0 and u = 1 map to the support endpoints, u = 0.5 to the mode.
double triangular_inverse_cdf(const TriangularAoaModel& model, double u) noexcept;

double sample_aoa(const TriangularAoaModel& model, RandomStream& rng) noexcept;

// Rejection sampling against the corresponding un-truncated density.
double sample_aoa(const TruncatedAoaModel& model, RandomStream& rng) noexcept;

// Gain law used when sampling a channel. `fixed_rms` replaces the Rayleigh
// draw with the deterministic RMS gain sqrt(2 sigma^2(gamma)); it exists for
// tests that need degenerate (zero-variance) channel energies.
enum class GainLaw { rayleigh, fixed_rms };

// Draws one channel realization: for each path i, gamma_i from its AoA model
// and a gain from Rayleigh(sigma^2(gamma_i)), independently across paths.
// Paths are consumed in order (AoA draw, then gain draw), so a given stream
// state reproduces the realization exactly.
// Throws std::invalid_argument on empty input or length mismatch.
ChannelRealization sample_channel(std::span<const TriangularAoaModel> aoa_models,
                                  std::span<const double> delays_s,
                                  const ScaledGaussianGainModel& gain_model,
                                  RandomStream& rng,
                                  GainLaw law = GainLaw::rayleigh);

ComponentEnergies component_energies(const ChannelRealization& realization) noexcept;

} // namespace uwacap

#endif // UWACAP_CHANNEL_MODEL_HPP
