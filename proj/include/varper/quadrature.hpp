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

#include "varper/errors.hpp"

namespace varper::quad {

namespace detail {

inline double simpson(double h, double fa, double fm, double fb) {
    return h * (fa + 4.0 * fm + fb) / 6.0;
}

template <class F>
double adapt(F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
             int depth, int forced_splits) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    if (!(a < lm && lm < m && m < rm && rm < b))
        throw ConvergenceError("adaptive quadrature interval collapsed before reaching tolerance");
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(m - a, fa, flm, fm);
    const double right = simpson(b - m, fm, frm, fb);
    const double delta = left + right - whole;
    if (forced_splits <= 0 && std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    if (depth <= 0)
        throw ConvergenceError("adaptive quadrature hit its depth limit before reaching tolerance");
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, forced_splits - 1) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, forced_splits - 1);
}

}  // namespace detail

/// Adaptive Simpson integration of f over [a, b] with Richardson error
/// estimation, subdividing until the estimated error drops below tol.
/// min_levels forces that many initial bisection levels so that an
/// oscillatory integrand cannot alias the coarse rule into a spurious
/// early acceptance. Throws ConvergenceError when the recursion depth is
/// exhausted first.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 48,
                        int min_levels = 6) {
    if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = detail::simpson(b - a, fa, fm, fb);
    return detail::adapt(f, a, b, fa, fm, fb, whole, tol, max_depth, min_levels);
}

}  // namespace varper::quad
