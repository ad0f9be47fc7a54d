// SPDX-License-Identifier: Apache-2.0
//
// uwacap - shallow-water acoustic channel modelling and vector-sensor
// capacity analysis toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "uwacap/special_functions.hpp"

#include <cmath>
#include <numbers>

namespace uwacap {

namespace {

// erf(x) = 2/sqrt(pi) * sum_{n>=0} (-1)^n x^(2n+1) / (n! (2n+1)),
// used for |x| < 1.5 where the alternating terms stay small enough that
// cancellation costs at most a few ulps.
double erf_series(double ax) {
    const double x2 = ax * ax;
    double power = ax; // (-1)^n x^(2n+1) / n!
    double sum = ax;
    for (int n = 1; n < 80; ++n) {
        power *= -x2 / n;
        const double term = power / (2 * n + 1);
        sum += term;
        if (std::fabs(term) <= 1e-18 * std::fabs(sum)) break;
    }
    return (2.0 / std::sqrt(std::numbers::pi)) * sum;
}

// sqrt(pi) e^{x^2} erfc(x) = 1/(x + (1/2)/(x + (2/2)/(x + (3/2)/(x + ...)))),
// evaluated by the modified Lentz algorithm; converges quickly for x >= 1.5.
double erfc_continued_fraction(double x) {
    constexpr double tiny = 1e-300;
    double f = tiny;
    double c = f;
    double d = 0.0;
    for (int n = 1; n <= 400; ++n) {
        const double a = (n == 1) ? 1.0 : 0.5 * (n - 1);
        d = x + a * d;
        if (d == 0.0) d = tiny;
        c = x + a / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-17) break;
    }
    return f * std::exp(-x * x) / std::sqrt(std::numbers::pi);
}

} // namespace

double erf_eval(double x) {
    if (std::isnan(x)) return x;
    const double ax = std::fabs(x);
    double r;
    if (ax < 1.5) {
        r = erf_series(ax);
    } else if (ax < 6.5) {
        r = 1.0 - erfc_continued_fraction(ax);
    } else {
        r = 1.0; // erfc(6.5) < 4e-20, below double resolution of 1
    }
    return x < 0.0 ? -r : r;
}

} // namespace uwacap
