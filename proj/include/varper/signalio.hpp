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
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "varper/detail/text.hpp"
#include "varper/errors.hpp"
#include "varper/orthobasis.hpp"
#include "varper/phase.hpp"

namespace varper {

/// A sampled signal: strictly increasing abscissas with one ordinate each.
struct SampledSignal {
    std::vector<double> xs;
    std::vector<double> ys;

    std::size_t size() const { return xs.size(); }
};

inline void validate(const SampledSignal& sig) {
    if (sig.xs.size() != sig.ys.size()) throw DomainError("signal has mismatched column lengths");
    for (std::size_t i = 0; i < sig.xs.size(); ++i) {
        if (!std::isfinite(sig.xs[i]) || !std::isfinite(sig.ys[i]))
            throw DomainError("signal contains a non-finite value at row " + std::to_string(i + 1));
        if (i > 0 && !(sig.xs[i] > sig.xs[i - 1]))
            throw DomainError("signal abscissas are not strictly increasing at row " +
                              std::to_string(i + 1));
    }
}

/// Samples sin(m g(x)) or cos(m g(x)) on a uniform n-point grid over
/// [x_lo, x_hi], endpoints included.
inline SampledSignal generate(const PhaseFunction& phase, int harmonic, BasisKind kind, double x_lo,
                              double x_hi, std::size_t n) {
    if (kind == BasisKind::constant) throw DomainError("generate needs a sine or cosine kind");
    if (harmonic < 1) throw DomainError("harmonic index must be at least 1");
    if (n < 2) throw DomainError("signal needs at least two samples");
    if (!(x_lo < x_hi)) throw DomainError("signal range is empty");
    SampledSignal sig;
    sig.xs.reserve(n);
    sig.ys.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = (i + 1 == n)
                             ? x_hi
                             : x_lo + (x_hi - x_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        sig.xs.push_back(x);
        sig.ys.push_back(detail::trig_value(kind, harmonic, phase(x)));
    }
    return sig;
}

/// Completed cycles plus a fractional remainder. The remainder is exact
/// only when the generating phase is known; the phaseless overload reports
/// it as zero.
struct CycleCount {
    std::size_t complete = 0;
    double fractional = 0.0;
};

namespace detail {

/// Upward zero crossings of the sampled signal. Samples within
/// 1e-9 max|y| of zero count as exact zeros, and a run of zeros is one
/// event: an upward crossing when the signal enters from below (or starts
/// there and leaves upward), including a final touch of zero from below,
/// which completes a cycle right at the end of the record.
inline std::size_t upward_crossings(const SampledSignal& sig) {
    double peak = 0.0;
    for (double y : sig.ys) peak = std::max(peak, std::abs(y));
    const double tie = 1e-9 * peak;
    int prev_sign = 0;  // last non-zero sign seen; 0 until then
    bool pending_zero = false;
    std::size_t count = 0;
    for (double y : sig.ys) {
        int s = 0;
        if (y > tie)
            s = 1;
        else if (y < -tie)
            s = -1;
        if (s == 0) {
            pending_zero = true;
            continue;
        }
        if (s > 0 && (prev_sign < 0 || (prev_sign == 0 && pending_zero))) ++count;
        prev_sign = s;
        pending_zero = false;
    }
    if (pending_zero && prev_sign < 0) ++count;
    return count;
}

}  // namespace detail

/// Counts full periods between consecutive upward zero crossings. Without
/// the generating phase the fractional part is unknown and reported as 0.
inline CycleCount count_cycles(const SampledSignal& sig) {
    if (sig.size() < 2) throw DomainError("cycle counting needs at least two samples");
    validate(sig);
    const std::size_t ups = detail::upward_crossings(sig);
    return {ups > 0 ? ups - 1 : 0, 0.0};
}

/// Phase-aware variant: the fractional remainder is
/// m (g(x_hi) - g(x_lo)) / (2 pi) minus the completed count.
inline CycleCount count_cycles(const SampledSignal& sig, const PhaseFunction& phase, int harmonic) {
    if (harmonic < 1) throw DomainError("harmonic index must be at least 1");
    CycleCount c = count_cycles(sig);
    const double total =
        harmonic * (phase(sig.xs.back()) - phase(sig.xs.front())) / kTwoPi;
    c.fractional = total - static_cast<double>(c.complete);
    return c;
}

/// Writes the signal as CSV with header x,y at full round-trip precision.
inline void write_signal_csv(const SampledSignal& sig, std::ostream& out) {
    validate(sig);
    out << "x,y\n";
    for (std::size_t i = 0; i < sig.size(); ++i)
        out << detail::format_full(sig.xs[i]) << ',' << detail::format_full(sig.ys[i]) << '\n';
}

inline void write_signal_csv(const SampledSignal& sig, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot open for writing");
    write_signal_csv(sig, out);
}

/// Reads a signal CSV: header x,y, then rows of two finite numbers in
/// strictly increasing x. A header-only file yields an empty signal.
inline SampledSignal read_signal_csv(std::istream& in, const std::string& name = "<stream>") {
    SampledSignal sig;
    std::string line;
    if (!detail::getline_trimmed(in, line) || line != "x,y")
        throw ParseError(name + " line 1: expected header 'x,y'");
    std::size_t lineno = 1;
    while (detail::getline_trimmed(in, line)) {
        ++lineno;
        const std::string where = name + " line " + std::to_string(lineno);
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw ParseError(where + ": expected two comma-separated fields");
        const double x = detail::parse_csv_double({line.data(), comma}, where);
        const double y =
            detail::parse_csv_double({line.data() + comma + 1, line.size() - comma - 1}, where);
        if (!sig.xs.empty() && !(x > sig.xs.back()))
            throw ParseError(where + ": abscissas must be strictly increasing");
        sig.xs.push_back(x);
        sig.ys.push_back(y);
    }
    return sig;
}

inline SampledSignal read_signal_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    return read_signal_csv(in, path);
}

/// Piecewise-linear interpolation; x must lie within the sampled range.
inline double interpolate(const SampledSignal& sig, double x) {
    if (sig.size() < 2) throw DomainError("interpolation needs at least two samples");
    if (!(x >= sig.xs.front()) || !(x <= sig.xs.back()))
        throw DomainError("interpolation point " + std::to_string(x) + " is outside the sampled range");
    const auto it = std::lower_bound(sig.xs.begin(), sig.xs.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - sig.xs.begin());
    if (j == 0) return sig.ys.front();
    if (sig.xs[j] == x) return sig.ys[j];
    const double t = (x - sig.xs[j - 1]) / (sig.xs[j] - sig.xs[j - 1]);
    return sig.ys[j - 1] + t * (sig.ys[j] - sig.ys[j - 1]);
}

}  // namespace varper
