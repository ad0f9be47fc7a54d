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
#include <vector>

#include "uwacap/fitting.hpp"
#include "uwacap/random.hpp"

using namespace uwacap;

namespace {

double model_eval(const ScaledGaussianGainModel& m, double gamma) {
    const double u = (gamma - m.xi) / m.varsigma;
    return m.lambda * std::exp(-u * u);
}

std::vector<GainAoaPoint> synthetic_points(const ScaledGaussianGainModel& truth, int n,
                                           double span_sigmas) {
    std::vector<GainAoaPoint> points;
    for (int i = 0; i < n; ++i) {
        const double gamma = truth.xi + span_sigmas * truth.varsigma *
                                            (2.0 * i / (n - 1.0) - 1.0);
        points.push_back({gamma, model_eval(truth, gamma), 1.0});
    }
    return points;
}

// gradient of the weighted least-squares objective at the given parameters
double gradient_norm(std::span<const GainAoaPoint> pts, const ScaledGaussianGainModel& m) {
    double g0 = 0.0, g1 = 0.0, g2 = 0.0;
    for (const GainAoaPoint& pt : pts) {
        const double u = (pt.aoa_rad - m.xi) / m.varsigma;
        const double e = std::exp(-u * u);
        const double f = m.lambda * e;
        const double r = pt.gain_sq - f;
        g0 += -2.0 * pt.weight * e * r;
        g1 += -2.0 * pt.weight * f * 2.0 * u / m.varsigma * r;
        g2 += -2.0 * pt.weight * f * 2.0 * u * u / m.varsigma * r;
    }
    return std::sqrt(g0 * g0 + g1 * g1 + g2 * g2);
}

} // namespace

TEST_CASE("binning: coincident AoAs, two-bin split, peak near the LoS angle") {
    std::vector<Eigenray> same_aoa = {{0.2, 0.6, 1.0, 0, 0}, {0.2, 0.7, 3.0, 1, 0}};
    const auto single = bin_gain_vs_aoa(same_aoa, 4);
    REQUIRE(single.size() == 1);
    CHECK(single[0].aoa_rad == 0.2);
    CHECK(single[0].gain_sq == doctest::Approx(5.0).epsilon(1e-15)); // mean of {1, 9}
    CHECK(single[0].weight == 2.0);

    std::vector<Eigenray> two = {{-0.1, 0.6, 2.0, 0, 0}, {0.1, 0.7, 4.0, 0, 1}};
    const auto pair = bin_gain_vs_aoa(two, 2);
    REQUIRE(pair.size() == 2);
    CHECK(pair[0].aoa_rad == doctest::Approx(-0.05).epsilon(1e-15));
    CHECK(pair[1].aoa_rad == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(pair[0].gain_sq == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(pair[1].gain_sq == doctest::Approx(16.0).epsilon(1e-15));

    const Scenario sc; // 1 km defaults, order 8
    const auto rays = trace_image_method(sc);
    const auto points = bin_gain_vs_aoa(rays, 15);
    double best_gain = -1.0;
    double best_aoa = 0.0;
    for (const GainAoaPoint& p : points) {
        if (p.gain_sq > best_gain) {
            best_gain = p.gain_sq;
            best_aoa = p.aoa_rad;
        }
    }
    CHECK(std::fabs(best_aoa) < 0.15); // strongest bin sits near the LoS AoA

    CHECK_THROWS_AS(bin_gain_vs_aoa(std::span<const Eigenray>{}, 10), std::invalid_argument);
    CHECK_THROWS_AS(bin_gain_vs_aoa(two, 1), std::invalid_argument);
}

TEST_CASE("noiseless synthetic data is recovered to solver precision") {
    const ScaledGaussianGainModel truth(1e-3, 0.02, 0.25);
    const auto points = synthetic_points(truth, 25, 2.0);
    const FitResult fit = fit_scaled_gaussian(points);

    CHECK(fit.converged);
    CHECK(std::fabs(fit.model.lambda - truth.lambda) <= 1e-8 * truth.lambda);
    CHECK(std::fabs(fit.model.xi - truth.xi) <= 1e-8 * std::fabs(truth.xi));
    CHECK(std::fabs(fit.model.varsigma - truth.varsigma) <= 1e-8 * truth.varsigma);
    CHECK(fit.r2 >= 1.0 - 1e-12);
    CHECK(gradient_norm(points, fit.model) <= 1e-8);
}

TEST_CASE("three exact points are interpolated") {
    const ScaledGaussianGainModel truth(2.0, 0.1, 0.4);
    std::vector<GainAoaPoint> points;
    for (double gamma : {-0.2, 0.1, 0.5})
        points.push_back({gamma, model_eval(truth, gamma), 1.0});

    const FitResult fit = fit_scaled_gaussian(points);
    CHECK(fit.sse <= 1e-18);
    CHECK(fit.r2 >= 1.0 - 1e-12);
}

TEST_CASE("5% multiplicative noise: parameters within 10%, r2 above 0.93") {
    const ScaledGaussianGainModel truth(1e-3, 0.2, 0.3);
    RandomStream rng(60601);
    for (int seed_rep = 0; seed_rep < 100; ++seed_rep) {
        auto points = synthetic_points(truth, 50, 2.0);
        for (GainAoaPoint& p : points) p.gain_sq *= 1.0 + 0.05 * rng.normal();

        const FitResult fit = fit_scaled_gaussian(points);
        CHECK(fit.converged);
        CHECK(std::fabs(fit.model.lambda - truth.lambda) <= 0.10 * truth.lambda);
        CHECK(std::fabs(fit.model.xi - truth.xi) <= 0.10 * std::fabs(truth.xi));
        CHECK(std::fabs(fit.model.varsigma - truth.varsigma) <= 0.10 * truth.varsigma);
        CHECK(fit.r2 >= 0.93);
    }
}

TEST_CASE("fit equivariance under gain scaling and AoA shifts") {
    const ScaledGaussianGainModel truth(5e-4, 0.05, 0.2);
    const auto base_points = synthetic_points(truth, 30, 2.0);
    const FitResult base = fit_scaled_gaussian(base_points);

    auto scaled = base_points;
    for (GainAoaPoint& p : scaled) p.gain_sq *= 3.7;
    const FitResult k = fit_scaled_gaussian(scaled);
    CHECK(k.model.lambda == doctest::Approx(3.7 * base.model.lambda).epsilon(1e-6));
    CHECK(k.model.xi == doctest::Approx(base.model.xi).epsilon(1e-6));
    CHECK(k.model.varsigma == doctest::Approx(base.model.varsigma).epsilon(1e-6));

    auto shifted = base_points;
    for (GainAoaPoint& p : shifted) p.aoa_rad += 0.15;
    const FitResult s = fit_scaled_gaussian(shifted);
    CHECK(s.model.xi == doctest::Approx(base.model.xi + 0.15).epsilon(1e-6));
    CHECK(s.model.lambda == doctest::Approx(base.model.lambda).epsilon(1e-6));
    CHECK(s.model.varsigma == doctest::Approx(base.model.varsigma).epsilon(1e-6));
}

TEST_CASE("reported metrics are internally consistent") {
    const ScaledGaussianGainModel truth(1e-3, 0.0, 0.3);
    auto points = synthetic_points(truth, 40, 2.0);
    RandomStream rng(11);
    for (GainAoaPoint& p : points) p.gain_sq *= 1.0 + 0.03 * rng.normal();

    const FitResult fit = fit_scaled_gaussian(points);
    CHECK(fit.rmse * fit.rmse * static_cast<double>(points.size()) ==
          doctest::Approx(fit.sse).epsilon(1e-12));
    CHECK(fit.r2 <= 1.0);
    CHECK(gradient_norm(points, fit.model) <= 1e-8);
}

TEST_CASE("degenerate inputs are rejected") {
    std::vector<GainAoaPoint> two = {{0.0, 1.0, 1.0}, {0.1, 2.0, 1.0}};
    CHECK_THROWS_AS(fit_scaled_gaussian(two), std::invalid_argument);

    std::vector<GainAoaPoint> constant = {{0.0, 1.0, 1.0}, {0.1, 1.0, 1.0}, {0.2, 1.0, 1.0}};
    CHECK_THROWS_AS(fit_scaled_gaussian(constant), std::invalid_argument);

    std::vector<GainAoaPoint> one_aoa = {{0.1, 1.0, 1.0}, {0.1, 2.0, 1.0}, {0.1, 3.0, 1.0}};
    CHECK_THROWS_AS(fit_scaled_gaussian(one_aoa), std::invalid_argument);
}

TEST_CASE("goodness of fit: perfect, constant-model, zero-variance") {
    const ScaledGaussianGainModel truth(1e-3, 0.02, 0.25);
    const auto points = synthetic_points(truth, 20, 2.0);

    const GoodnessOfFit perfect = goodness_of_fit(points, truth);
    CHECK(perfect.sse <= 1e-30);
    CHECK(perfect.r2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(perfect.rmse <= 1e-15);

    // a nearly constant model pinned at the data mean explains none of the
    // structure
    double mean = 0.0;
    for (const GainAoaPoint& p : points) mean += p.gain_sq;
    mean /= static_cast<double>(points.size());
    const ScaledGaussianGainModel flat(mean, 0.0, 1e6);
    const GoodnessOfFit bad = goodness_of_fit(points, flat);
    CHECK(bad.r2 <= 0.05);

    std::vector<GainAoaPoint> constant = {{0.0, 1.0, 1.0}, {0.1, 1.0, 1.0}};
    CHECK_THROWS_AS(goodness_of_fit(constant, truth), std::domain_error);
}
