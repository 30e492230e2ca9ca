// Copyright 2026 The fdcache Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "fdcache/errors.hpp"

namespace fdcache {

/// Tolerances for the kernels that have no closed form.
struct QuadratureSettings {
    double relative_tolerance = 1e-9;
    double absolute_tolerance = 1e-12;
    /// Initial trapezoid panel count over the full angular period.
    std::size_t angular_panels = 64;
    /// Upper bound accepted for the neglected radial tail.
    double truncation_threshold = 1e-9;
    std::size_t max_angular_panels = std::size_t{1} << 20;
    std::size_t max_intervals = 4000;

    void validate() const;
};

struct IntegrationResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
};

namespace detail {

// 15-point Kronrod abscissae on [0, 1] (descending) with Kronrod and
// embedded 7-point Gauss weights; QUADPACK qk15.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo;
    double hi;
    double value;
    double error;
    bool operator<(const Panel& other) const noexcept { return error < other.error; }
};

template <class F>
Panel gauss_kronrod15(F& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[j] * pair;
        if (j % 2 == 1) {
            gauss += kGaussWeights[j / 2] * pair;
        }
    }
    return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/**
 * Globally adaptive Gauss-Kronrod (7/15) integration over the intervals
 * delimited by `breakpoints` (at least two, increasing).
 *
 * The panel with the largest error estimate is bisected until the summed
 * estimate is below max(abs_tol, rel_tol * |value|). Throws NumericalError
 * carrying the achieved error if `max_intervals` is reached first.
 */
template <class F>
IntegrationResult integrate_adaptive(F&& f, std::span<const double> breakpoints, double abs_tol,
                                     double rel_tol, std::size_t max_intervals) {
    if (breakpoints.size() < 2) {
        throw InvalidArgument("integrate_adaptive: need at least two breakpoints");
    }
    std::priority_queue<detail::Panel> panels;
    double value = 0.0;
    double error = 0.0;
    for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
        const auto panel = detail::gauss_kronrod15(f, breakpoints[k], breakpoints[k + 1]);
        value += panel.value;
        error += panel.error;
        panels.push(panel);
    }
    std::size_t evaluations = 15 * panels.size();
    while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
        if (panels.size() >= max_intervals) {
            throw NumericalError("integrate_adaptive: interval budget exhausted, error " +
                                     std::to_string(error),
                                 error);
        }
        const detail::Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        const auto left = detail::gauss_kronrod15(f, worst.lo, mid);
        const auto right = detail::gauss_kronrod15(f, mid, worst.hi);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        evaluations += 30;
        panels.push(left);
        panels.push(right);
    }
    // Re-sum to shed the drift of incremental updates.
    value = 0.0;
    error = 0.0;
    while (!panels.empty()) {
        value += panels.top().value;
        error += panels.top().error;
        panels.pop();
    }
    return {value, error, evaluations};
}

/**
 * Mean of an even 2pi-periodic function, (1/2pi) * integral of f over one
 * period, by the trapezoid rule with panel doubling.
 *
 * Only [0, pi] is sampled; `panels` counts panels over the full period and
 * must be even. Stops when two successive refinements differ by less than
 * max(abs_tol, rel_tol * |value|).
 */
template <class F>
IntegrationResult even_periodic_mean(F&& f, std::size_t panels, double rel_tol, double abs_tol,
                                     std::size_t max_panels) {
    constexpr double kPi = 3.14159265358979323846;
    std::size_t half = std::max<std::size_t>(panels / 2, 1);
    // Trapezoid on [0, pi] with `half` subintervals, endpoint weights 1/2.
    double sum = 0.5 * (f(0.0) + f(kPi));
    for (std::size_t k = 1; k < half; ++k) {
        sum += f(kPi * static_cast<double>(k) / static_cast<double>(half));
    }
    std::size_t evaluations = half + 1;
    double estimate = sum / static_cast<double>(half);
    for (;;) {
        if (2 * half * 2 > max_panels) {
            break;
        }
        double midpoints = 0.0;
        for (std::size_t k = 0; k < half; ++k) {
            midpoints += f(kPi * (static_cast<double>(k) + 0.5) / static_cast<double>(half));
        }
        evaluations += half;
        sum += midpoints;
        half *= 2;
        const double refined = sum / static_cast<double>(half);
        const double change = std::abs(refined - estimate);
        estimate = refined;
        if (change <= std::max(abs_tol, rel_tol * std::abs(refined))) {
            return {estimate, change, evaluations};
        }
        if (2 * half * 2 > max_panels) {
            throw NumericalError("even_periodic_mean: no convergence at " +
                                     std::to_string(2 * half) + " panels, change " +
                                     std::to_string(change),
                                 change);
        }
    }
    throw NumericalError("even_periodic_mean: panel budget below one refinement", 0.0);
}

}  // namespace fdcache
