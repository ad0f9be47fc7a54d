// SPDX-License-Identifier: Apache-2.0
//
// uwacap - shallow-water acoustic channel modelling and vector-sensor
// capacity analysis toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "uwacap/fitting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace uwacap {

namespace {

struct Params {
    double lambda;
    double xi;
    double varsigma;
};

double model_value(const Params& p, double gamma) {
    const double u = (gamma - p.xi) / p.varsigma;
    return p.lambda * std::exp(-u * u);
}

double weighted_cost(std::span<const GainAoaPoint> pts, const Params& p) {
    double cost = 0.0;
    for (const GainAoaPoint& pt : pts) {
        const double r = pt.gain_sq - model_value(p, pt.aoa_rad);
        cost += pt.weight * r * r;
    }
    return cost;
}

// Solve the 3x3 system A x = b by Gaussian elimination with partial pivoting.
// Returns false when A is numerically singular.
bool solve3(std::array<std::array<double, 3>, 3> A, std::array<double, 3> b,
            std::array<double, 3>& x) {
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int row = col + 1; row < 3; ++row)
            if (std::fabs(A[row][col]) > std::fabs(A[pivot][col])) pivot = row;
        if (std::fabs(A[pivot][col]) < 1e-300) return false;
        std::swap(A[col], A[pivot]);
        std::swap(b[col], b[pivot]);
        for (int row = col + 1; row < 3; ++row) {
            const double f = A[row][col] / A[col][col];
            for (int k = col; k < 3; ++k) A[row][k] -= f * A[col][k];
            b[row] -= f * b[col];
        }
    }
    for (int row = 2; row >= 0; --row) {
        double s = b[row];
        for (int k = row + 1; k < 3; ++k) s -= A[row][k] * x[k];
        x[row] = s / A[row][row];
    }
    return std::isfinite(x[0]) && std::isfinite(x[1]) && std::isfinite(x[2]);
}

} // namespace

std::vector<GainAoaPoint> bin_gain_vs_aoa(std::span<const Eigenray> rays, int n_bins) {
    if (rays.empty()) throw std::invalid_argument("bin_gain_vs_aoa: ray set is empty");
    if (n_bins < 2) throw std::invalid_argument("bin_gain_vs_aoa: n_bins must be >= 2");

    double lo = rays.front().aoa_rad;
    double hi = lo;
    for (const Eigenray& r : rays) {
        lo = std::min(lo, r.aoa_rad);
        hi = std::max(hi, r.aoa_rad);
    }

    if (lo == hi) {
        double sum_sq = 0.0;
        for (const Eigenray& r : rays) sum_sq += r.amplitude * r.amplitude;
        return {GainAoaPoint{lo, sum_sq / static_cast<double>(rays.size()),
                             static_cast<double>(rays.size())}};
    }

    const double width = (hi - lo) / n_bins;
    std::vector<double> sums(static_cast<std::size_t>(n_bins), 0.0);
    std::vector<std::size_t> counts(static_cast<std::size_t>(n_bins), 0);
    for (const Eigenray& r : rays) {
        auto idx = static_cast<std::size_t>((r.aoa_rad - lo) / width);
        idx = std::min(idx, static_cast<std::size_t>(n_bins - 1)); // top edge inclusive
        sums[idx] += r.amplitude * r.amplitude;
        ++counts[idx];
    }

    std::vector<GainAoaPoint> points;
    for (std::size_t i = 0; i < sums.size(); ++i) {
        if (counts[i] == 0) continue;
        points.push_back(GainAoaPoint{lo + (static_cast<double>(i) + 0.5) * width,
                                      sums[i] / static_cast<double>(counts[i]),
                                      static_cast<double>(counts[i])});
    }
    return points;
}

FitResult fit_scaled_gaussian(std::span<const GainAoaPoint> points) {
    const std::size_t n = points.size();
    if (n < 3)
        throw std::invalid_argument("fit_scaled_gaussian: need at least 3 points for 3 "
                                    "parameters");

    double y_min = points[0].gain_sq, y_max = points[0].gain_sq;
    double a_min = points[0].aoa_rad, a_max = points[0].aoa_rad;
    std::size_t argmax = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (points[i].gain_sq > y_max) {
            y_max = points[i].gain_sq;
            argmax = i;
        }
        y_min = std::min(y_min, points[i].gain_sq);
        a_min = std::min(a_min, points[i].aoa_rad);
        a_max = std::max(a_max, points[i].aoa_rad);
        if (!(points[i].weight >= 1.0))
            throw std::invalid_argument("fit_scaled_gaussian: point weights must be >= 1");
    }
    if (y_min == y_max)
        throw std::invalid_argument("fit_scaled_gaussian: gain data is constant, the spread "
                                    "parameter is unidentifiable");
    if (a_min == a_max)
        throw std::invalid_argument("fit_scaled_gaussian: all points share one AoA, the spread "
                                    "parameter is unidentifiable");
    if (!(y_max > 0.0))
        throw std::invalid_argument("fit_scaled_gaussian: peak gain must be positive");

    Params p{y_max, points[argmax].aoa_rad, 0.5 * (a_max - a_min)};
    double cost = weighted_cost(points, p);
    double damping = 1e-3;
    bool converged = false;
    int iterations = 0;

    while (iterations < 200 && !converged) {
        ++iterations;

        // normal equations J^T W J and J^T W r with the analytic Jacobian
        std::array<std::array<double, 3>, 3> jtj{};
        std::array<double, 3> jtr{};
        for (const GainAoaPoint& pt : points) {
            const double u = (pt.aoa_rad - p.xi) / p.varsigma;
            const double e = std::exp(-u * u);
            const double f = p.lambda * e;
            const std::array<double, 3> j = {e, f * 2.0 * u / p.varsigma,
                                             f * 2.0 * u * u / p.varsigma};
            const double r = pt.gain_sq - f;
            for (int a = 0; a < 3; ++a) {
                jtr[a] += pt.weight * j[a] * r;
                for (int b = 0; b < 3; ++b) jtj[a][b] += pt.weight * j[a] * j[b];
            }
        }

        bool stepped = false;
        for (int attempt = 0; attempt < 16 && !stepped; ++attempt) {
            auto damped = jtj;
            for (int a = 0; a < 3; ++a)
                damped[a][a] += damping * std::max(jtj[a][a], 1e-300);

            std::array<double, 3> delta{};
            if (!solve3(damped, jtr, delta)) {
                damping = std::min(damping * 10.0, 1e12);
                continue;
            }

            Params trial{p.lambda + delta[0], p.xi + delta[1], p.varsigma + delta[2]};
            trial.varsigma = std::fabs(trial.varsigma);
            if (!(trial.varsigma > 0.0) || !std::isfinite(trial.lambda) ||
                !std::isfinite(trial.xi)) {
                damping = std::min(damping * 10.0, 1e12);
                continue;
            }

            const double trial_cost = weighted_cost(points, trial);
            if (trial_cost <= cost) {
                const double rel_step = std::max(
                    {std::fabs(delta[0]) / std::max(std::fabs(p.lambda), 1e-300),
                     std::fabs(delta[1]) / std::max(std::fabs(p.xi), 1e-300),
                     std::fabs(delta[2]) / std::max(std::fabs(p.varsigma), 1e-300)});
                p = trial;
                cost = trial_cost;
                damping = std::max(damping * 0.3, 1e-14);
                stepped = true;
                if (rel_step < 1e-10) converged = true;
            } else {
                damping = std::min(damping * 10.0, 1e12);
            }
        }
        if (!stepped) break; // no acceptable step at any damping
    }

    if (!(p.lambda > 0.0))
        throw std::runtime_error("fit_scaled_gaussian: fit diverged to a non-positive scale");

    FitResult result{ScaledGaussianGainModel(p.lambda, p.xi, p.varsigma), 0.0, 0.0, 0.0,
                     converged, iterations};
    const GoodnessOfFit gof = goodness_of_fit(points, result.model);
    result.sse = gof.sse;
    result.r2 = gof.r2;
    result.rmse = gof.rmse;
    return result;
}

GoodnessOfFit goodness_of_fit(std::span<const GainAoaPoint> points,
                              const ScaledGaussianGainModel& model) {
    if (points.empty()) throw std::invalid_argument("goodness_of_fit: no points");

    double mean = 0.0;
    for (const GainAoaPoint& pt : points) mean += pt.gain_sq;
    mean /= static_cast<double>(points.size());

    double sse = 0.0, sst = 0.0;
    for (const GainAoaPoint& pt : points) {
        const double u = (pt.aoa_rad - model.xi) / model.varsigma;
        const double r = pt.gain_sq - model.lambda * std::exp(-u * u);
        sse += r * r;
        sst += (pt.gain_sq - mean) * (pt.gain_sq - mean);
    }
    if (sst == 0.0)
        throw std::domain_error("goodness_of_fit: zero-variance data, r2 is undefined");

    return GoodnessOfFit{sse, 1.0 - sse / sst,
                         std::sqrt(sse / static_cast<double>(points.size()))};
}

} // namespace uwacap
