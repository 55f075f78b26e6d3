// Copyright 2026 The varper Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>

#include "varper/errors.hpp"
#include "varper/phase.hpp"

namespace varper {

enum class PeriodDirection { forward, backward };

/// A variable-period value at a query point, with the periodicity residual
/// |sin g(x +- T) - sin g(x)| carried along as a diagnostic.
struct PeriodResult {
    double x = 0.0;
    double value = 0.0;
    PeriodDirection direction = PeriodDirection::forward;
    double residual = 0.0;
};

namespace detail {

inline double power_periodicity_residual(double alpha, double x, double shifted) {
    return std::abs(std::sin(std::pow(shifted, alpha)) - std::sin(std::pow(x, alpha)));
}

}  // namespace detail

/// Forward period of sin x^alpha / cos x^alpha in closed form:
/// T(x) = -x + (x^alpha + 2 pi)^(1/alpha), defined for every x >= 0.
inline PeriodResult forward_period_power(double alpha, double x) {
    if (!(alpha > 0.0)) throw DomainError("power-law exponent must be positive");
    if (!(x >= 0.0)) throw DomainError("forward period requires x >= 0");
    double value;
    if (alpha == 1.0) {
        value = kTwoPi;
    } else {
        value = -x + std::pow(std::pow(x, alpha) + kTwoPi, 1.0 / alpha);
    }
    return {x, value, PeriodDirection::forward, detail::power_periodicity_residual(alpha, x, x + value)};
}

/// Backward period T-(x) = x - (x^alpha - 2 pi)^(1/alpha), defined only for
/// x >= (2 pi)^(1/alpha); smaller arguments have no repeated point on the left.
inline PeriodResult backward_period_power(double alpha, double x) {
    if (!(alpha > 0.0)) throw DomainError("power-law exponent must be positive");
    if (!(x >= 0.0)) throw DomainError("backward period requires x >= 0");
    double value;
    if (alpha == 1.0) {
        if (x < kTwoPi - 1e-9)
            throw DomainError("backward period undefined: x < 2 pi");
        value = kTwoPi;
    } else {
        double u = std::pow(x, alpha) - kTwoPi;
        if (u < 0.0) {
            if (u < -1e-9)
                throw DomainError("backward period undefined: x < (2 pi)^(1/alpha)");
            u = 0.0;
        }
        value = x - std::pow(u, 1.0 / alpha);
    }
    return {x, value, PeriodDirection::backward, detail::power_periodicity_residual(alpha, x, x - value)};
}

/// Forward period of sin g(x) for a general increasing phase:
/// T(x) = -x + g^-1(g(x) + 2 pi).
inline PeriodResult forward_period_general(const PhaseFunction& phase, double x,
                                           double tol = kDefaultInvertTol) {
    const double gx = phase(x);
    const double shifted = phase.invert(gx + kTwoPi, tol);
    const double value = shifted - x;
    const double residual = std::abs(std::sin(phase(shifted)) - std::sin(gx));
    return {x, value, PeriodDirection::forward, residual};
}

/// Backward period T-(x) = x - g^-1(g(x) - 2 pi); requires
/// g(x) - 2 pi >= g(domain start).
inline PeriodResult backward_period_general(const PhaseFunction& phase, double x,
                                            double tol = kDefaultInvertTol) {
    const double gx = phase(x);
    const double target = gx - kTwoPi;
    const double floor = std::isinf(phase.domain_start())
                             ? -std::numeric_limits<double>::infinity()
                             : phase(phase.domain_start());
    if (target < floor - 1e-9 * (1.0 + std::abs(target)))
        throw DomainError("backward period undefined: g(x) - 2 pi lies below g(domain start)");
    const double shifted = phase.invert(std::max(target, floor), tol);
    const double value = x - shifted;
    const double residual = std::abs(std::sin(phase(shifted)) - std::sin(gx));
    return {x, value, PeriodDirection::backward, residual};
}

/// |sin g(x + T(x)) - sin g(x)|: zero, up to numerics, whenever T really is
/// a period of sin compose g.
inline double check_periodicity(const PhaseFunction& phase, double x,
                                double tol = kDefaultInvertTol) {
    return forward_period_general(phase, x, tol).residual;
}

/// Residuals of the forward/backward period relations
///   T(x) = T-(x + T(x))     and     T-(x) = T(x - T-(x)).
/// The backward residual is absent when T-(x) itself is undefined at x.
struct ConsistencyResiduals {
    double forward = 0.0;
    std::optional<double> backward;
};

inline ConsistencyResiduals check_period_consistency(const PhaseFunction& phase, double x,
                                                     double tol = kDefaultInvertTol) {
    ConsistencyResiduals out;
    const PeriodResult fwd = forward_period_general(phase, x, tol);
    const PeriodResult back_at_shift = backward_period_general(phase, x + fwd.value, tol);
    out.forward = std::abs(fwd.value - back_at_shift.value);
    try {
        const PeriodResult back = backward_period_general(phase, x, tol);
        const PeriodResult fwd_at_shift = forward_period_general(phase, x - back.value, tol);
        out.backward = std::abs(back.value - fwd_at_shift.value);
    } catch (const DomainError&) {
        out.backward.reset();
    }
    return out;
}

/// Minimum finite-difference slope of T(x) over an n-point uniform grid on
/// [x_lo, x_hi]. Central differences with step 1e-5 (1 + |x|), one-sided at
/// domain boundaries. An admissible variable period keeps this above -1.
inline double check_derivative_bound(const PhaseFunction& phase, double x_lo, double x_hi,
                                     std::size_t n, double tol = kDefaultInvertTol) {
    if (n < 2) throw DomainError("slope scan needs at least two grid points");
    if (!(x_lo < x_hi)) throw DomainError("slope scan range is empty");
    const auto period_at = [&](double x) { return forward_period_general(phase, x, tol).value; };
    double min_slope = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double x = x_lo + (x_hi - x_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        const double h = 1e-5 * (1.0 + std::abs(x));
        const bool left_ok = x - h >= phase.domain_start();
        const bool right_ok = x + h <= phase.domain_end();
        double slope;
        if (left_ok && right_ok) {
            slope = (period_at(x + h) - period_at(x - h)) / (2.0 * h);
        } else if (right_ok) {
            slope = (period_at(x + h) - period_at(x)) / h;
        } else {
            slope = (period_at(x) - period_at(x - h)) / h;
        }
        min_slope = std::min(min_slope, slope);
    }
    return min_slope;
}

}  // namespace varper
