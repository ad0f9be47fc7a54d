// SPDX-License-Identifier: Apache-2.0
//
// uwacap - shallow-water acoustic channel modelling and vector-sensor
// capacity analysis toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef UWACAP_QUADRATURE_HPP
#define UWACAP_QUADRATURE_HPP

#include <cmath>
#include <stdexcept>
#include <utility>

namespace uwacap {

namespace detail {

template <class F>
double adaptive_simpson_step(F& f, double a, double b, double fa, double fm, double fb,
                             double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double h = b - a;
    const double left = (h / 12.0) * (fa + 4.0 * flm + fm);
    const double right = (h / 12.0) * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::fabs(delta) <= 15.0 * tol || h <= std::fabs(m) * 1e-15) {
        return left + right + delta / 15.0; // Richardson correction
    }
    if (depth <= 0) {
        throw std::runtime_error("adaptive_simpson: quadrature did not converge "
                                 "(recursion depth exhausted)");
    }
    return adaptive_simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

// Adaptive Simpson quadrature with Richardson extrapolation. `tol` is an
// absolute tolerance on the integral over [a, b]. Throws std::runtime_error
// when the requested tolerance is unreachable within `max_depth` bisections.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 60) {
    if (!(b > a)) {
        if (a == b) return 0.0;
        throw std::invalid_argument("adaptive_simpson: interval is reversed");
    }
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Same, with the tolerance scaled off a coarse composite-Simpson estimate so
// the result is accurate to ~`rel_tol` relative even when the integral's
// magnitude is far from 1.
template <class F>
double adaptive_simpson_rel(F&& f, double a, double b, double rel_tol, int max_depth = 60) {
    if (a == b) return 0.0;
    const int n = 64; // coarse scale estimate
    const double h = (b - a) / n;
    double coarse = f(a) + f(b);
    for (int i = 1; i < n; ++i) coarse += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    coarse *= h / 3.0;
    const double tol = std::max(rel_tol * std::fabs(coarse), 1e-300);
    return adaptive_simpson(std::forward<F>(f), a, b, tol, max_depth);
}

} // namespace uwacap

#endif // UWACAP_QUADRATURE_HPP
