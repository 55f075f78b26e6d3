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

#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>

#include "varper/errors.hpp"

namespace varper {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Default tolerance, in phase units, for numeric phase inversion.
inline constexpr double kDefaultInvertTol = 1e-12;

enum class PhaseKind { identity, power_law, power_plus_sine, custom };

namespace detail {

/// Finds x in [lo, hi] with f(x) = target for increasing f, by bisection
/// with secant refinement inside the maintained bracket. Terminates when
/// |f(x) - target| <= tol or the bracket collapses to machine resolution.
template <class F>
double solve_increasing(F&& f, double target, double lo, double hi, double tol) {
    constexpr int kMaxIter = 200;
    double rlo = f(lo) - target;
    double rhi = f(hi) - target;
    if (rlo == 0.0) return lo;
    if (rhi == 0.0) return hi;
    if (rlo > 0.0 || rhi < 0.0) throw DomainError("root is not bracketed");
    for (int iter = 0; iter < kMaxIter; ++iter) {
        double x;
        if (iter % 2 == 1 && rhi != rlo) {
            x = lo - rlo * (hi - lo) / (rhi - rlo);
            if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
        } else {
            x = 0.5 * (lo + hi);
        }
        const double r = f(x) - target;
        if (std::abs(r) <= tol) return x;
        if (r < 0.0) {
            lo = x;
            rlo = r;
        } else {
            hi = x;
            rhi = r;
        }
        if (hi - lo <= std::numeric_limits<double>::epsilon() * (std::abs(lo) + std::abs(hi) + 1.0))
            return 0.5 * (lo + hi);
    }
    throw ConvergenceError("phase inversion did not converge to the requested tolerance");
}

}  // namespace detail

/// A strictly increasing continuous phase map g(x). Instances are immutable
/// after construction; every operation is pure and safe to call from any
/// number of threads.
///
/// Built-in kinds:
///   identity          g(x) = x                       on (-inf, inf)
///   power_law         g(x) = x^alpha                 on [0, inf)
///   power_plus_sine   g(x) = x^alpha + A sin(w x)    on [0, inf)
///   custom            caller-supplied callable       on [start, end]
///
/// power_plus_sine and custom parameters are checked at construction by
/// sampling g' on a 10000-point grid over [start, min(end, start + 100)];
/// parameter sets with a non-positive sampled slope are rejected.
class PhaseFunction {
public:
    using Fn = std::function<double(double)>;

    static PhaseFunction identity() {
        PhaseFunction p;
        p.kind_ = PhaseKind::identity;
        p.domain_start_ = -std::numeric_limits<double>::infinity();
        return p;
    }

    static PhaseFunction power_law(double alpha) {
        if (!(alpha > 0.0)) throw DomainError("power-law exponent must be positive");
        PhaseFunction p;
        p.kind_ = PhaseKind::power_law;
        p.alpha_ = alpha;
        p.domain_start_ = 0.0;
        return p;
    }

    static PhaseFunction power_plus_sine(double alpha, double amplitude, double frequency) {
        if (!(alpha > 0.0)) throw DomainError("power-law exponent must be positive");
        if (!std::isfinite(amplitude) || !std::isfinite(frequency))
            throw DomainError("perturbation amplitude and frequency must be finite");
        PhaseFunction p;
        p.kind_ = PhaseKind::power_plus_sine;
        p.alpha_ = alpha;
        p.amplitude_ = amplitude;
        p.frequency_ = frequency;
        p.domain_start_ = 0.0;
        p.validate_monotone();
        return p;
    }

    static PhaseFunction custom(Fn g, double domain_start,
                                double domain_end = std::numeric_limits<double>::infinity()) {
        if (!g) throw DomainError("custom phase requires a callable");
        if (!std::isfinite(domain_start)) throw DomainError("custom phase requires a finite domain start");
        if (!(domain_start < domain_end)) throw DomainError("custom phase domain is empty");
        PhaseFunction p;
        p.kind_ = PhaseKind::custom;
        p.fn_ = std::make_shared<const Fn>(std::move(g));
        p.domain_start_ = domain_start;
        p.domain_end_ = domain_end;
        p.validate_monotone();
        return p;
    }

    /// g(x). Throws DomainError outside [domain_start, domain_end].
    double operator()(double x) const {
        check_domain(x);
        return eval_unchecked(x);
    }

    /// g'(x). Analytic for the built-in kinds, central finite difference
    /// with step max(1e-6, 1e-8 |x|) for custom phases. Throws DomainError
    /// at x = 0 for power kinds with alpha < 1 (the slope diverges there).
    double derivative(double x) const {
        check_domain(x);
        switch (kind_) {
            case PhaseKind::identity:
                return 1.0;
            case PhaseKind::power_law:
            case PhaseKind::power_plus_sine: {
                double slope;
                if (x == 0.0) {
                    if (alpha_ < 1.0)
                        throw DomainError("phase slope is singular at x = 0 for alpha < 1");
                    slope = (alpha_ == 1.0) ? 1.0 : 0.0;
                } else {
                    slope = alpha_ * std::pow(x, alpha_ - 1.0);
                }
                if (kind_ == PhaseKind::power_plus_sine)
                    slope += amplitude_ * frequency_ * std::cos(frequency_ * x);
                return slope;
            }
            case PhaseKind::custom:
                return difference_derivative(x);
        }
        throw Error("unreachable");
    }

    /// Solves g(x) = y for x with |g(x) - y| <= tol. Uses the analytic
    /// inverse y^(1/alpha) for pure power laws and bracketed root-finding
    /// otherwise; the bracket is grown geometrically from domain_start.
    /// Throws DomainError when y has no preimage in the domain.
    double invert(double y, double tol = kDefaultInvertTol) const {
        if (!(tol > 0.0)) throw DomainError("inversion tolerance must be positive");
        if (!std::isfinite(y)) throw DomainError("inversion target must be finite");
        switch (kind_) {
            case PhaseKind::identity:
                return y;
            case PhaseKind::power_law: {
                double target = y;
                if (target < 0.0) {
                    if (target < -preimage_slack(y))
                        throw DomainError("no preimage: value lies below g(domain start)");
                    target = 0.0;
                }
                return std::pow(target, 1.0 / alpha_);
            }
            case PhaseKind::power_plus_sine:
            case PhaseKind::custom:
                return invert_bracketed(y, tol);
        }
        throw Error("unreachable");
    }

    PhaseKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double amplitude() const { return amplitude_; }
    double frequency() const { return frequency_; }
    double domain_start() const { return domain_start_; }
    double domain_end() const { return domain_end_; }

    /// True for phases of the form x^alpha (identity counts as alpha = 1).
    bool is_power_form() const {
        return kind_ == PhaseKind::identity || kind_ == PhaseKind::power_law;
    }

    /// Structural equality for built-in kinds; callable identity for custom.
    bool same_as(const PhaseFunction& other) const {
        if (kind_ != other.kind_) return false;
        switch (kind_) {
            case PhaseKind::identity:
                return true;
            case PhaseKind::power_law:
                return alpha_ == other.alpha_;
            case PhaseKind::power_plus_sine:
                return alpha_ == other.alpha_ && amplitude_ == other.amplitude_ &&
                       frequency_ == other.frequency_;
            case PhaseKind::custom:
                return fn_ == other.fn_ && domain_start_ == other.domain_start_ &&
                       domain_end_ == other.domain_end_;
        }
        return false;
    }

private:
    PhaseFunction() = default;

    static double preimage_slack(double y) { return 1e-12 * (1.0 + std::abs(y)); }

    void check_domain(double x) const {
        if (!(x >= domain_start_) || !(x <= domain_end_))
            throw DomainError("phase argument " + std::to_string(x) + " is outside the domain");
    }

    double eval_unchecked(double x) const {
        switch (kind_) {
            case PhaseKind::identity:
                return x;
            case PhaseKind::power_law:
                return std::pow(x, alpha_);
            case PhaseKind::power_plus_sine:
                return std::pow(x, alpha_) + amplitude_ * std::sin(frequency_ * x);
            case PhaseKind::custom: {
                const double y = (*fn_)(x);
                if (!std::isfinite(y))
                    throw DomainError("custom phase returned a non-finite value at x = " + std::to_string(x));
                return y;
            }
        }
        throw Error("unreachable");
    }

    double difference_derivative(double x) const {
        const double h = std::max(1e-6, 1e-8 * std::abs(x));
        if (x - h >= domain_start_ && x + h <= domain_end_)
            return (eval_unchecked(x + h) - eval_unchecked(x - h)) / (2.0 * h);
        if (x + 2.0 * h <= domain_end_)
            return (-3.0 * eval_unchecked(x) + 4.0 * eval_unchecked(x + h) - eval_unchecked(x + 2.0 * h)) /
                   (2.0 * h);
        return (3.0 * eval_unchecked(x) - 4.0 * eval_unchecked(x - h) + eval_unchecked(x - 2.0 * h)) /
               (2.0 * h);
    }

    double invert_bracketed(double y, double tol) const {
        constexpr int kMaxExpansion = 200;
        const double lo = domain_start_;
        const double glo = eval_unchecked(lo);
        if (y <= glo) {
            if (y < glo - preimage_slack(y))
                throw DomainError("no preimage: value lies below g(domain start)");
            return lo;
        }
        double step = 1.0;
        double hi = lo;
        for (int i = 0;; ++i) {
            if (i >= kMaxExpansion)
                throw ConvergenceError("bracket expansion exceeded its iteration cap");
            hi = lo + step;
            if (hi >= domain_end_) {
                hi = domain_end_;
                if (eval_unchecked(hi) < y)
                    throw DomainError("no preimage: value lies above g(domain end)");
                break;
            }
            if (eval_unchecked(hi) >= y) break;
            step *= 2.0;
        }
        return detail::solve_increasing([this](double t) { return eval_unchecked(t); }, y, lo, hi, tol);
    }

    void validate_monotone() const {
        constexpr int kGridPoints = 10000;
        const double span_end = std::min(domain_end_, domain_start_ + 100.0);
        const double h = (span_end - domain_start_) / (kGridPoints - 1);
        for (int i = 0; i < kGridPoints; ++i) {
            const double x = domain_start_ + i * h;
            double slope;
            try {
                slope = derivative(x);
            } catch (const DomainError&) {
                continue;  // singular boundary slope, diverges upward
            }
            if (!(slope > 0.0))
                throw DomainError("phase is not strictly increasing: g'(" + std::to_string(x) +
                                  ") = " + std::to_string(slope));
        }
    }

    PhaseKind kind_ = PhaseKind::identity;
    double alpha_ = 1.0;
    double amplitude_ = 0.0;
    double frequency_ = 0.0;
    double domain_start_ = -std::numeric_limits<double>::infinity();
    double domain_end_ = std::numeric_limits<double>::infinity();
    std::shared_ptr<const Fn> fn_;
};

/// Parses "0.75", "3/4" or "1.3333" into a double.
inline double parse_number_or_ratio(std::string_view text) {
    const auto parse = [](std::string_view s) {
        double v = 0.0;
        const char* first = s.data();
        const char* last = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last)
            throw DomainError("invalid number '" + std::string(s) + "'");
        return v;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return parse(text);
    const double num = parse(text.substr(0, slash));
    const double den = parse(text.substr(slash + 1));
    if (den == 0.0) throw DomainError("invalid ratio '" + std::string(text) + "': zero denominator");
    return num / den;
}

/// Parses the command-line phase notation: "id", "pow:ALPHA" or
/// "powsin:ALPHA:AMP:FREQ", with each number a decimal or a ratio p/q.
inline PhaseFunction parse_phase_spec(std::string_view spec) {
    std::string_view rest = spec;
    const auto next = [&rest, &spec]() {
        if (rest.empty())
            throw DomainError("invalid phase spec '" + std::string(spec) + "': missing field");
        const auto colon = rest.find(':');
        std::string_view field = rest.substr(0, colon);
        rest = (colon == std::string_view::npos) ? std::string_view{} : rest.substr(colon + 1);
        return field;
    };
    const std::string_view name = next();
    if (name == "id") {
        if (!rest.empty()) throw DomainError("phase spec 'id' takes no parameters");
        return PhaseFunction::identity();
    }
    if (name == "pow") {
        const double alpha = parse_number_or_ratio(next());
        if (!rest.empty()) throw DomainError("phase spec 'pow' takes exactly one parameter");
        return PhaseFunction::power_law(alpha);
    }
    if (name == "powsin") {
        const double alpha = parse_number_or_ratio(next());
        const double amp = parse_number_or_ratio(next());
        const double freq = parse_number_or_ratio(next());
        if (!rest.empty()) throw DomainError("phase spec 'powsin' takes exactly three parameters");
        return PhaseFunction::power_plus_sine(alpha, amp, freq);
    }
    throw DomainError("unknown phase kind '" + std::string(name) + "' (expected id, pow or powsin)");
}

}  // namespace varper
