// SPDX-License-Identifier: Apache-2.0
//
// uwacap - shallow-water acoustic channel modelling and vector-sensor
// capacity analysis toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef UWACAP_FITTING_HPP
#define UWACAP_FITTING_HPP

#include <span>
#include <vector>

#include "uwacap/channel_model.hpp"
#include "uwacap/ray_geometry.hpp"

namespace uwacap {

// Estimates the scaled-Gaussian gain map (lambda, xi, varsigma) from binned
// gain-versus-AoA statistics. Squared amplitude is what gets binned and
// fitted: the scale parameter is an energy quantity, so mean |h|^2 per AoA
// bin is the consistent observable (amplitude-domain data should be squared
// before entering GainAoaPoint).

struct GainAoaPoint {
    double aoa_rad; // bin center
    double gain_sq; // mean squared amplitude in the bin
    double weight;  // sample count, >= 1
};

struct FitResult {
    ScaledGaussianGainModel model;
    double sse;  // unweighted sum of squared residuals
    double r2;   // 1 - sse / total sum of squares
    double rmse; // sqrt(sse / n_points)
    bool converged;
    int iterations;
};

struct GoodnessOfFit {
    double sse;
    double r2;
    double rmse;
};

// Equal-width bins over the observed AoA range; per-bin mean of amplitude^2;
// empty bins omitted. All rays at a single AoA collapse to one bin.
// Throws std::invalid_argument for an empty ray set or n_bins < 2.
std::vector<GainAoaPoint> bin_gain_vs_aoa(std::span<const Eigenray> rays, int n_bins);

// Damped Gauss-Newton (Levenberg-Marquardt) weighted least squares with the
// analytic Jacobian. Initialization: lambda = max gain_sq, xi = AoA of the
// maximum, varsigma = half the AoA span. Converged when the relative
// parameter change drops below 1e-10 (at most 200 iterations; on
// non-convergence the best parameters so far are returned with
// converged = false). Throws std::invalid_argument for fewer than 3 points or
// for degenerate data (constant gain_sq or a single AoA), where the spread is
// unidentifiable.
FitResult fit_scaled_gaussian(std::span<const GainAoaPoint> points);

// sse = sum of squared residuals, r2 = 1 - sse/sum((y - mean)^2),
// rmse = sqrt(sse/n), all unweighted. Throws std::domain_error when the data
// has zero variance (r2 undefined).
GoodnessOfFit goodness_of_fit(std::span<const GainAoaPoint> points,
                              const ScaledGaussianGainModel& model);

} // namespace uwacap

#endif // UWACAP_FITTING_HPP
