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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "varper/errors.hpp"
#include "varper/period.hpp"
#include "varper/phase.hpp"
#include "varper/quadrature.hpp"

namespace varper {

enum class BasisKind { constant, sine, cosine };

namespace detail {

inline double trig_value(BasisKind kind, int harmonic, double u) {
    switch (kind) {
        case BasisKind::constant:
            return 1.0;
        case BasisKind::sine:
            return std::sin(harmonic * u);
        case BasisKind::cosine:
            return std::cos(harmonic * u);
    }
    throw Error("unreachable");
}

}  // namespace detail

/// One element of the warped trigonometric system built on a phase g:
/// the constant 1, sin(m g(x)) or cos(m g(x)) with harmonic index m >= 1.
class BasisFunction {
public:
    BasisFunction(BasisKind kind, int harmonic, PhaseFunction phase)
        : kind_(kind), harmonic_(kind == BasisKind::constant ? 0 : harmonic), phase_(std::move(phase)) {
        if (kind_ != BasisKind::constant && harmonic < 1)
            throw DomainError("harmonic index must be at least 1");
    }

    static BasisFunction constant(PhaseFunction phase) {
        return {BasisKind::constant, 0, std::move(phase)};
    }
    static BasisFunction sine(int harmonic, PhaseFunction phase) {
        return {BasisKind::sine, harmonic, std::move(phase)};
    }
    static BasisFunction cosine(int harmonic, PhaseFunction phase) {
        return {BasisKind::cosine, harmonic, std::move(phase)};
    }

    double operator()(double x) const { return detail::trig_value(kind_, harmonic_, phase_(x)); }

    BasisKind kind() const { return kind_; }
    int harmonic() const { return harmonic_; }
    const PhaseFunction& phase() const { return phase_; }

private:
    BasisKind kind_;
    int harmonic_;
    PhaseFunction phase_;
};

/// One segment of orthogonality [x0, x0 + length], where length is the
/// forward period at x0.
struct Segment {
    double x0 = 0.0;
    double length = 0.0;
};

inline Segment make_segment(const PhaseFunction& phase, double x0, double tol = kDefaultInvertTol) {
    return {x0, forward_period_general(phase, x0, tol).value};
}

/// Orthogonality weight. Power-form phases use rho(x) = x^(alpha - 1),
/// which normalizes sin/cos to pi/alpha; other phases use rho(x) = g'(x),
/// which normalizes them to pi. The two conventions differ by the constant
/// factor alpha on power-form phases.
inline double weight(const PhaseFunction& phase, double x) {
    if (phase.is_power_form()) {
        if (!(x >= phase.domain_start()))
            throw DomainError("weight argument " + std::to_string(x) + " is outside the domain");
        const double a = phase.alpha();
        if (a == 1.0) return 1.0;
        if (x == 0.0) {
            if (a < 1.0) throw DomainError("weight is singular at x = 0 for alpha < 1");
            return 0.0;
        }
        return std::pow(x, a - 1.0);
    }
    return phase.derivative(x);
}

namespace detail {

/// du scale of the weighted measure: rho(x) dx = u_scale * du under u = g(x).
inline double u_scale(const PhaseFunction& phase) {
    return phase.is_power_form() ? 1.0 / phase.alpha() : 1.0;
}

inline double integral_of_cos(int k, double a, double b) {
    return k == 0 ? (b - a) : (std::sin(k * b) - std::sin(k * a)) / k;
}

inline double integral_of_sin(int k, double a, double b) {
    return k == 0 ? 0.0 : (std::cos(k * a) - std::cos(k * b)) / k;
}

/// Integral of a product of two system elements over [a, b] in the phase
/// variable, via product-to-sum antiderivatives. The equal-harmonic case
/// replaces the vanishing-frequency term by its limit.
inline double trig_pair_integral(BasisKind k1, int m, BasisKind k2, int n, double a, double b) {
    if (k1 == BasisKind::constant && k2 == BasisKind::constant) return b - a;
    if (k1 == BasisKind::constant)
        return k2 == BasisKind::sine ? integral_of_sin(n, a, b) : integral_of_cos(n, a, b);
    if (k2 == BasisKind::constant)
        return k1 == BasisKind::sine ? integral_of_sin(m, a, b) : integral_of_cos(m, a, b);
    if (k1 == BasisKind::sine && k2 == BasisKind::sine)
        return 0.5 * (integral_of_cos(m - n, a, b) - integral_of_cos(m + n, a, b));
    if (k1 == BasisKind::cosine && k2 == BasisKind::cosine)
        return 0.5 * (integral_of_cos(m - n, a, b) + integral_of_cos(m + n, a, b));
    const int s = (k1 == BasisKind::sine) ? m : n;
    const int c = (k1 == BasisKind::sine) ? n : m;
    return 0.5 * (integral_of_sin(s + c, a, b) + integral_of_sin(s - c, a, b));
}

/// True when the weight is singular (alpha < 1) or has a slope kink
/// (1 < alpha < 2) at the segment start; both stall the x-space rule.
inline bool weight_needs_substitution(const PhaseFunction& phase, double x0) {
    if (phase.kind() != PhaseKind::power_law && phase.kind() != PhaseKind::power_plus_sine)
        return false;
    return phase.alpha() < 2.0 && phase.alpha() != 1.0 && x0 <= phase.domain_start();
}

/// Forced bisection levels so the Simpson rule starts below a quarter wave
/// of the fastest harmonic present.
inline int alias_guard_levels(int harmonic_sum) {
    int levels = 6;
    while ((1 << levels) < 4 * harmonic_sum) ++levels;
    return levels;
}

}  // namespace detail

/// Integral of rho(x) h(x) over one segment by adaptive Simpson quadrature.
/// When the weight misbehaves at the segment start (power forms anchored at
/// the domain origin: unbounded for alpha < 1, slope kink for alpha < 2)
/// the first panel is computed under the substitution u = g(x), which
/// removes the trouble; the integrand there is h(g^-1(u)), still evaluated
/// pointwise.
template <class H>
double weighted_segment_integral(const PhaseFunction& phase, const Segment& seg, H&& h, double tol,
                                 int min_levels = 6) {
    if (!(seg.length > 0.0)) throw DomainError("segment length must be positive");
    const double x1 = seg.x0 + seg.length;
    if (!detail::weight_needs_substitution(phase, seg.x0)) {
        return quad::adaptive_simpson([&](double x) { return weight(phase, x) * h(x); }, seg.x0, x1,
                                      tol, 48, min_levels);
    }
    const double xs = std::min(seg.x0 + 1.0, seg.x0 + 0.5 * seg.length);
    const double scale = detail::u_scale(phase);
    const double ua = phase(seg.x0);
    const double ub = phase(xs);
    const double first =
        scale * quad::adaptive_simpson([&](double u) { return h(phase.invert(u, 1e-13)); }, ua, ub,
                                       0.5 * tol / scale, 48, min_levels);
    const double rest = quad::adaptive_simpson([&](double x) { return weight(phase, x) * h(x); }, xs,
                                               x1, 0.5 * tol, 48, min_levels);
    return first + rest;
}

enum class IntegrationMethod { closed_form, quadrature };

/// Weighted inner product of two system elements over one segment of
/// orthogonality. The closed form substitutes u = g(x) and evaluates the
/// product-to-sum antiderivatives over a phase interval of length exactly
/// 2 pi; the quadrature route integrates rho b1 b2 adaptively in x.
inline double inner_product(const BasisFunction& b1, const BasisFunction& b2, const Segment& seg,
                            IntegrationMethod method, double quad_tol = 1e-9) {
    if (!b1.phase().same_as(b2.phase()))
        throw DomainError("inner product requires both elements to share one phase");
    const PhaseFunction& phase = b1.phase();
    const double u0 = phase(seg.x0);
    const double u1 = phase(seg.x0 + seg.length);
    if (std::abs(u1 - u0 - kTwoPi) > 1e-6)
        throw DomainError("segment length is not one forward period");
    if (method == IntegrationMethod::closed_form) {
        return detail::u_scale(phase) * detail::trig_pair_integral(b1.kind(), b1.harmonic(),
                                                                   b2.kind(), b2.harmonic(), u0,
                                                                   u0 + kTwoPi);
    }
    const int levels = detail::alias_guard_levels(b1.harmonic() + b2.harmonic());
    const auto product = [&](double x) {
        const double u = phase(x);
        return detail::trig_value(b1.kind(), b1.harmonic(), u) *
               detail::trig_value(b2.kind(), b2.harmonic(), u);
    };
    return weighted_segment_integral(phase, seg, product, quad_tol, levels);
}

/// Squared norm of a system element over any segment of orthogonality:
/// 2 pi / alpha for the constant and pi / alpha for sin/cos on power-form
/// phases; 2 pi and pi for every other phase.
inline double norm_squared(const BasisFunction& b) {
    const double scale = detail::u_scale(b.phase());
    return (b.kind() == BasisKind::constant ? kTwoPi : std::numbers::pi) * scale;
}

using GramMatrix = std::vector<std::vector<double>>;

/// Element i of the Gram ordering [1, sin g, cos g, sin 2g, cos 2g, ...].
inline BasisFunction gram_basis_element(const PhaseFunction& phase, int index) {
    if (index < 0) throw DomainError("basis index must be non-negative");
    if (index == 0) return BasisFunction::constant(phase);
    const int m = (index + 1) / 2;
    return (index % 2 == 1) ? BasisFunction::sine(m, phase) : BasisFunction::cosine(m, phase);
}

/// (2M+1) x (2M+1) matrix of inner products over one segment. Entries are
/// independent of evaluation order; rows may be computed concurrently.
inline GramMatrix gram_matrix(const PhaseFunction& phase, int harmonics, const Segment& seg,
                              IntegrationMethod method, double quad_tol = 1e-9) {
    if (harmonics < 1) throw DomainError("gram matrix needs at least one harmonic");
    const int dim = 2 * harmonics + 1;
    GramMatrix g(dim, std::vector<double>(dim, 0.0));
    for (int i = 0; i < dim; ++i) {
        const BasisFunction bi = gram_basis_element(phase, i);
        for (int j = i; j < dim; ++j) {
            const double v = inner_product(bi, gram_basis_element(phase, j), seg, method, quad_tol);
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    return g;
}

inline double max_off_diagonal(const GramMatrix& g) {
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g[i].size(); ++j)
            if (i != j) worst = std::max(worst, std::abs(g[i][j]));
    return worst;
}

inline double max_entry_difference(const GramMatrix& a, const GramMatrix& b) {
    if (a.size() != b.size()) throw DomainError("matrices differ in size");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) throw DomainError("matrices differ in size");
        for (std::size_t j = 0; j < a[i].size(); ++j)
            worst = std::max(worst, std::abs(a[i][j] - b[i][j]));
    }
    return worst;
}

}  // namespace varper
