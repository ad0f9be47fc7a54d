// SPDX-License-Identifier: Apache-2.0
//
// uwacap - shallow-water acoustic channel modelling and vector-sensor
// capacity analysis toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "uwacap/capacity.hpp"
#include "uwacap/special_functions.hpp"

using namespace uwacap;

namespace {

ChannelRealization single_path(double amplitude, double aoa) {
    ChannelRealization r;
    r.paths = {{amplitude, aoa, 0.0}};
    return r;
}

struct PathSet {
    std::vector<TriangularAoaModel> models;
    std::vector<double> delays;
};

PathSet spread_paths(int n, double beta) {
    PathSet set;
    for (int i = 0; i < n; ++i) {
        set.models.emplace_back(-0.6 + 1.2 * i / std::max(1, n - 1), beta);
        set.delays.push_back(0.01 * i);
    }
    return set;
}

} // namespace

TEST_CASE("SNR helpers") {
    CHECK(snr_from_db(0.0).rho == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(snr_from_db(10.0).rho == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(snr_from_powers(2.6e-8, 1.3e-8).rho == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(snr_from_powers(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(snr_from_powers(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("instantaneous capacity: closed values and the AoA invariance") {
    const SnrSpec unit{1.0};
    CHECK(instantaneous_capacity_vector(single_path(0.0, 0.3), unit) == 0.0);
    CHECK(instantaneous_capacity_vector(single_path(1.0, 0.0), unit) ==
          doctest::Approx(2.0).epsilon(1e-14));
    // the vector capacity sees only sum h_i^2, not the angles
    for (double aoa : {-1.2, -0.3, 0.0, 0.7, 1.4}) {
        CHECK(instantaneous_capacity_vector(single_path(1.0, aoa), unit) ==
              doctest::Approx(2.0).epsilon(1e-12));
    }

    CHECK(instantaneous_capacity_siso(single_path(1.0, 0.2), unit) ==
          doctest::Approx(1.0).epsilon(1e-14));

    const SnrSpec high{1e4};
    const double gap = instantaneous_capacity_vector(single_path(1.0, 0.1), high) -
                       instantaneous_capacity_siso(single_path(1.0, 0.1), high);
    CHECK(std::fabs(gap - std::log2(3.0)) < 1e-3);
}

TEST_CASE("SISO capacity never exceeds the vector capacity") {
    const ScaledGaussianGainModel gain(1.0, 0.0, 0.3);
    const PathSet set = spread_paths(6, 0.05);
    RandomStream rng(5);
    for (int rep = 0; rep < 50; ++rep) {
        const ChannelRealization r = sample_channel(set.models, set.delays, gain, rng);
        const SnrSpec snr{0.5 + 3.0 * rng.uniform()};
        CHECK(instantaneous_capacity_siso(r, snr) <= instantaneous_capacity_vector(r, snr));
    }
}

TEST_CASE("ergodic MC is deterministic and degenerates to zero spread") {
    const ScaledGaussianGainModel gain(1.0, 0.0, 0.3);
    const PathSet set = spread_paths(4, 0.03);
    const SnrSpec snr{10.0};

    const CapacityEstimate a = ergodic_capacity_mc(set.models, set.delays, gain, snr, 20000, 7,
                                                   McVariant::vector_sensor);
    const CapacityEstimate b = ergodic_capacity_mc(set.models, set.delays, gain, snr, 20000, 7,
                                                   McVariant::vector_sensor);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(a.trials == 20000);

    // beta = 0 plus the fixed-gain hook makes every trial identical
    PathSet spikes = spread_paths(4, 0.0);
    const CapacityEstimate fixed =
        ergodic_capacity_mc(spikes.models, spikes.delays, gain, snr, 1000, 7,
                            McVariant::vector_sensor, GainLaw::fixed_rms);
    CHECK(fixed.std_error == 0.0);

    ChannelRealization deterministic;
    for (std::size_t i = 0; i < spikes.models.size(); ++i) {
        const double theta = spikes.models[i].theta;
        deterministic.paths.push_back(
            {std::sqrt(rayleigh_second_moment_factor * sigma_squared(gain, theta)), theta,
             spikes.delays[i]});
    }
    CHECK(fixed.mean ==
          doctest::Approx(instantaneous_capacity_vector(deterministic, snr)).epsilon(1e-14));

    CHECK_THROWS_AS(
        ergodic_capacity_mc({}, {}, gain, snr, 10, 1, McVariant::vector_sensor),
        std::invalid_argument);
}

TEST_CASE("MC mean respects Jensen dominance across a rho x N grid") {
    const ScaledGaussianGainModel gain(0.9, 0.02, 0.4);
    for (int n : {1, 2, 5, 10, 15}) {
        const PathSet set = spread_paths(n, 0.04);
        for (double rho : {0.1, 1.0, 10.0, 100.0, 1000.0}) {
            const SnrSpec snr{rho};
            const CapacityEstimate mc = ergodic_capacity_mc(
                set.models, set.delays, gain, snr, 20000, 99, McVariant::vector_sensor);
            const double ub = capacity_upper_bound_quadrature(set.models, gain, snr);
            CHECK(mc.mean <= ub + 3.0 * mc.std_error);
        }
    }
}

TEST_CASE("per-path expected energy: point mass, flat limit, trapezoid oracle") {
    const ScaledGaussianGainModel gain(1.0, 0.0, 0.3);

    CHECK(per_path_expected_energy(gain, TriangularAoaModel(0.1, 0.0)) ==
          doctest::Approx(sigma_squared(gain, 0.1)).epsilon(1e-15));

    const ScaledGaussianGainModel flat(2.0, 0.1, 10.0);
    CHECK(per_path_expected_energy(flat, TriangularAoaModel(0.1, 0.01)) ==
          doctest::Approx(2.0).epsilon(1e-4));

    const TriangularAoaModel aoa(0.1, 0.05);
    const auto integrand = [&](double g) {
        return sigma_squared(gain, g) * triangular_density(aoa, g);
    };
    const double oracle =
        oracles::trapezoid(integrand, aoa.theta - aoa.beta, aoa.theta, 1000000) +
        oracles::trapezoid(integrand, aoa.theta, aoa.theta + aoa.beta, 1000000);
    const double value = per_path_expected_energy(gain, aoa);
    CHECK(std::fabs(value - oracle) <= 1e-10 * std::fabs(oracle));
}

TEST_CASE("closed form matches the quadrature oracle over random parameter draws") {
    RandomStream rng(4242);
    for (int draw = 0; draw < 100; ++draw) {
        const double lambda = std::pow(10.0, -4.0 + 5.0 * rng.uniform());
        const double varsigma = 0.05 + 0.95 * rng.uniform();
        const double theta = -0.5 + rng.uniform();
        const double xi = theta + varsigma * (-1.5 + 3.0 * rng.uniform());
        // beta/varsigma spans the Taylor branch and the direct branch
        const double beta = varsigma * std::pow(10.0, -3.0 + 3.48 * rng.uniform());

        const ScaledGaussianGainModel gain(lambda, xi, varsigma);
        const TriangularAoaModel aoa(theta, beta);
        const double quad = per_path_expected_energy(gain, aoa);
        const double closed = per_path_expected_energy_closed_form(gain, aoa);
        CHECK(std::fabs(closed - quad) <= 1e-9 * std::fabs(quad));
    }
}

TEST_CASE("upper bound: degenerate AoA limit and small-rho expansion") {
    const ScaledGaussianGainModel gain(0.7, -0.05, 0.25);
    std::vector<TriangularAoaModel> spikes;
    double energy = 0.0;
    for (double theta : {-0.2, 0.0, 0.15}) {
        spikes.emplace_back(theta, 0.0);
        energy += rayleigh_second_moment_factor * sigma_squared(gain, theta);
    }
    const SnrSpec snr{3.0};
    const double expected = std::log2(1.0 + 3.0 * snr.rho * energy);
    CHECK(capacity_upper_bound_closed_form(spikes, gain, snr) ==
          doctest::Approx(expected).epsilon(1e-14));
    CHECK(capacity_upper_bound_quadrature(spikes, gain, snr) ==
          doctest::Approx(expected).epsilon(1e-14));

    // rho -> 0: C_UB -> 3 rho E / ln 2 to first order
    const SnrSpec tiny{1e-9};
    const double bound = capacity_upper_bound_quadrature(spikes, gain, tiny);
    const double linear = 3.0 * tiny.rho * energy / std::numbers::ln2;
    CHECK(std::fabs(bound - linear) <= linear * 3.0 * tiny.rho * energy);
}

TEST_CASE("upper bound is monotone in rho and in the gain scale") {
    const PathSet set = spread_paths(5, 0.04);
    const ScaledGaussianGainModel gain(0.5, 0.0, 0.3);
    double previous = -1.0;
    for (double rho : {0.01, 0.1, 1.0, 10.0, 100.0}) {
        const double ub = capacity_upper_bound_closed_form(set.models, gain, SnrSpec{rho});
        CHECK(ub > previous);
        previous = ub;
    }

    const ScaledGaussianGainModel larger(0.8, 0.0, 0.3);
    CHECK(capacity_upper_bound_closed_form(set.models, larger, SnrSpec{5.0}) >=
          capacity_upper_bound_closed_form(set.models, gain, SnrSpec{5.0}));
}

TEST_CASE("bound is tight for deterministic energies") {
    const ScaledGaussianGainModel gain(1.0, 0.0, 0.3);
    PathSet spikes = spread_paths(5, 0.0);
    const SnrSpec snr{20.0};
    const CapacityEstimate mc =
        ergodic_capacity_mc(spikes.models, spikes.delays, gain, snr, 2000, 3,
                            McVariant::vector_sensor, GainLaw::fixed_rms);
    const double ub = capacity_upper_bound_closed_form(spikes.models, gain, snr);
    CHECK(mc.std_error == 0.0);
    CHECK(std::fabs(mc.mean - ub) <= 1e-9 * ub);
}

TEST_CASE("erf evaluation: exact points, odd symmetry, libm cross-check") {
    CHECK(erf_eval(0.0) == 0.0);
    CHECK(erf_eval(1.0) == doctest::Approx(0.8427007929497149).epsilon(1e-15));
    CHECK(erf_eval(27.0) == 1.0);
    CHECK(erf_eval(-27.0) == -1.0);

    for (double x = 0.0; x <= 8.0; x += 0.03125) {
        CHECK(erf_eval(-x) == -erf_eval(x));
        CHECK(std::fabs(erf_eval(x) - std::erf(x)) <= 1e-14);
    }
}
