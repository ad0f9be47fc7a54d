// SPDX-License-Identifier: Apache-2.0
//
// uwacap - shallow-water acoustic channel modelling and vector-sensor
// capacity analysis toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "uwacap/channel_model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "uwacap/quadrature.hpp"

namespace uwacap {

namespace {

constexpr double half_pi = std::numbers::pi / 2.0;

// unnormalized truncated kernels, shifted so t = gamma - mu
double gaussian_kernel(double t, double sigma) {
    return std::exp(-t * t / (2.0 * sigma * sigma)) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

double laplacian_kernel(double t, double sigma) {
    return std::exp(-std::numbers::sqrt2 * std::fabs(t) / sigma) / (sigma * std::numbers::sqrt2);
}

} // namespace

ScaledGaussianGainModel::ScaledGaussianGainModel(double lambda_, double xi_, double varsigma_)
    : lambda(lambda_), xi(xi_), varsigma(varsigma_) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("ScaledGaussianGainModel: lambda must be > 0");
    if (!(varsigma > 0.0))
        throw std::invalid_argument("ScaledGaussianGainModel: varsigma must be > 0");
    if (!std::isfinite(xi))
        throw std::invalid_argument("ScaledGaussianGainModel: xi must be finite");
}

TriangularAoaModel::TriangularAoaModel(double theta_, double beta_)
    : theta(theta_), beta(beta_) {
    if (!(beta >= 0.0))
        throw std::invalid_argument("TriangularAoaModel: beta must be >= 0");
    if (!std::isfinite(theta))
        throw std::invalid_argument("TriangularAoaModel: theta must be finite");
}

TruncatedAoaModel::TruncatedAoaModel(Kind kind_, double mu_, double sigma_)
    : kind(kind_), mu(mu_), sigma(sigma_), normalizer(0.0) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("TruncatedAoaModel: sigma must be > 0");
    if (!std::isfinite(mu))
        throw std::invalid_argument("TruncatedAoaModel: mu must be finite");
    // Integrate the un-truncated kernel over the support; the Laplacian kernel
    // has a kink at t = 0, so integrate the halves separately.
    const double s = sigma;
    double mass;
    if (kind == Kind::gaussian) {
        mass = adaptive_simpson_rel([s](double t) { return gaussian_kernel(t, s); },
                                    -half_pi, half_pi, 1e-13);
    } else {
        mass = adaptive_simpson_rel([s](double t) { return laplacian_kernel(t, s); },
                                    -half_pi, 0.0, 1e-13) +
               adaptive_simpson_rel([s](double t) { return laplacian_kernel(t, s); },
                                    0.0, half_pi, 1e-13);
    }
    normalizer = 1.0 / mass;
}

double sigma_squared(const ScaledGaussianGainModel& model, double gamma) noexcept {
    const double u = (gamma - model.xi) / model.varsigma;
    return model.lambda * std::exp(-u * u);
}

double rayleigh_gain_density(double sigma2, double alpha) {
    if (!(sigma2 > 0.0))
        throw std::invalid_argument("rayleigh_gain_density: sigma2 must be > 0");
    if (!(alpha >= 0.0))
        throw std::invalid_argument("rayleigh_gain_density: alpha must be >= 0");
    return (alpha / sigma2) * std::exp(-alpha * alpha / (2.0 * sigma2));
}

double rayleigh_from_uniform(double sigma2, double u) noexcept {
    return std::sqrt(-2.0 * sigma2 * std::log(u));
}

double sample_path_gain(const ScaledGaussianGainModel& model, double gamma,
                        RandomStream& rng) noexcept {
    return rayleigh_from_uniform(sigma_squared(model, gamma), rng.uniform_open_closed());
}

double triangular_density(const TriangularAoaModel& model, double gamma) noexcept {
    const double t = model.theta;
    const double b = model.beta;
    if (b == 0.0) {
        return gamma == t ? std::numeric_limits<double>::infinity() : 0.0;
    }
    if (gamma <= t - b || gamma >= t + b) return 0.0;
    if (gamma <= t) return (gamma - t + b) / (b * b);
    return (t + b - gamma) / (b * b);
}

double truncated_density(const TruncatedAoaModel& model, double gamma) noexcept {
    const double t = gamma - model.mu;
    if (t < -half_pi || t > half_pi) return 0.0;
    const double kernel = model.kind == TruncatedAoaModel::Kind::gaussian
                              ? gaussian_kernel(t, model.sigma)
                              : laplacian_kernel(t, model.sigma);
    return model.normalizer * kernel;
}

double triangular_inverse_cdf(const TriangularAoaModel& model, double u) noexcept {
    const double b = model.beta;
    if (b == 0.0) return model.theta;
    if (u <= 0.5) return model.theta - b + b * std::sqrt(2.0 * u);
    return model.theta + b - b * std::sqrt(2.0 * (1.0 - u));
}

double sample_aoa(const TriangularAoaModel& model, RandomStream& rng) noexcept {
    return triangular_inverse_cdf(model, rng.uniform());
}

double sample_aoa(const TruncatedAoaModel& model, RandomStream& rng) noexcept {
    for (;;) {
        double candidate;
        if (model.kind == TruncatedAoaModel::Kind::gaussian) {
            candidate = model.mu + model.sigma * rng.normal();
        } else {
            // inverse CDF of the un-truncated Laplacian with scale sigma/sqrt(2)
            const double u = rng.uniform_open_closed();
            const double scale = model.sigma / std::numbers::sqrt2;
            candidate = u < 0.5 ? model.mu + scale * std::log(2.0 * u)
                                : model.mu - scale * std::log(2.0 * (1.0 - u));
        }
        if (std::fabs(candidate - model.mu) <= half_pi) return candidate;
    }
}

ChannelRealization sample_channel(std::span<const TriangularAoaModel> aoa_models,
                                  std::span<const double> delays_s,
                                  const ScaledGaussianGainModel& gain_model,
                                  RandomStream& rng, GainLaw law) {
    if (aoa_models.empty())
        throw std::invalid_argument("sample_channel: path list is empty");
    if (aoa_models.size() != delays_s.size())
        throw std::invalid_argument("sample_channel: aoa_models and delays differ in length");

    ChannelRealization realization;
    realization.paths.reserve(aoa_models.size());
    for (std::size_t i = 0; i < aoa_models.size(); ++i) {
        const double gamma = sample_aoa(aoa_models[i], rng);
        const double gain =
            law == GainLaw::rayleigh
                ? sample_path_gain(gain_model, gamma, rng)
                : std::sqrt(rayleigh_second_moment_factor * sigma_squared(gain_model, gamma));
        realization.paths.push_back({gain, gamma, delays_s[i]});
    }
    return realization;
}

ComponentEnergies component_energies(const ChannelRealization& realization) noexcept {
    ComponentEnergies e{0.0, 0.0, 0.0};
    for (const PathArrival& p : realization.paths) {
        const double h2 = p.amplitude * p.amplitude;
        const double c = std::cos(p.aoa_rad);
        const double s = std::sin(p.aoa_rad);
        e.pressure += h2;
        e.range += h2 * c * c;
        e.depth += h2 * s * s;
    }
    return e;
}

} // namespace uwacap
