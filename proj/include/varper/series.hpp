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
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "varper/detail/text.hpp"
#include "varper/errors.hpp"
#include "varper/orthobasis.hpp"
#include "varper/period.hpp"
#include "varper/phase.hpp"

namespace varper {

/// Coefficients of an expansion over the warped trigonometric system,
/// anchored at the segment [x0, x0 + T(x0)]. The orthogonality of the
/// system is segment-local, so the coefficients are too; a longer signal
/// is handled as a chain of consecutive segments (see segment_chain).
struct Spectrum {
    PhaseFunction phase = PhaseFunction::identity();
    double x0 = 0.0;
    double a0 = 0.0;
    std::vector<double> a;  // cosine coefficients, harmonic m at a[m-1]
    std::vector<double> b;  // sine coefficients, harmonic m at b[m-1]

    std::size_t harmonics() const { return a.size(); }
};

/// Projects f onto {1, sin m g, cos m g : m <= harmonics} over the segment
/// anchored at x0: each coefficient is a weighted inner product divided by
/// the squared norm of its element. Inner products are computed by the
/// quadrature route.
template <class F>
Spectrum expand(F&& f, const PhaseFunction& phase, double x0, int harmonics,
                double quad_tol = 1e-9) {
    if (harmonics < 0) throw DomainError("harmonic count must be non-negative");
    const Segment seg = make_segment(phase, x0);
    const double scale = detail::u_scale(phase);
    Spectrum s;
    s.phase = phase;
    s.x0 = x0;
    s.a.resize(static_cast<std::size_t>(harmonics), 0.0);
    s.b.resize(static_cast<std::size_t>(harmonics), 0.0);
    const int levels = detail::alias_guard_levels(2 * std::max(harmonics, 1));
    s.a0 = weighted_segment_integral(phase, seg, f, quad_tol, levels) / (kTwoPi * scale);
    for (int m = 1; m <= harmonics; ++m) {
        const auto against_cos = [&](double x) { return f(x) * std::cos(m * phase(x)); };
        const auto against_sin = [&](double x) { return f(x) * std::sin(m * phase(x)); };
        const double norm = std::numbers::pi * scale;
        s.a[static_cast<std::size_t>(m - 1)] =
            weighted_segment_integral(phase, seg, against_cos, quad_tol, levels) / norm;
        s.b[static_cast<std::size_t>(m - 1)] =
            weighted_segment_integral(phase, seg, against_sin, quad_tol, levels) / norm;
    }
    return s;
}

/// Evaluates a0 + sum_m a_m cos(m g(x)) + b_m sin(m g(x)). Points outside
/// the expansion segment are permitted; there the value is an extrapolation.
inline double synthesize(const Spectrum& s, double x) {
    if (s.a.size() != s.b.size()) throw DomainError("spectrum has mismatched coefficient lists");
    const double u = s.phase(x);
    double acc = s.a0;
    for (std::size_t m = 1; m <= s.a.size(); ++m) {
        const double mu = static_cast<double>(m) * u;
        acc += s.a[m - 1] * std::cos(mu) + s.b[m - 1] * std::sin(mu);
    }
    return acc;
}

/// Consecutive segments of orthogonality covering [x_lo, x_hi]: each
/// segment starts where the previous one ended.
inline std::vector<Segment> segment_chain(const PhaseFunction& phase, double x_lo, double x_hi,
                                          double tol = kDefaultInvertTol) {
    if (!(x_lo < x_hi)) throw DomainError("segment chain range is empty");
    std::vector<Segment> chain;
    double x = x_lo;
    while (x < x_hi) {
        const Segment seg = make_segment(phase, x, tol);
        if (!(seg.length > 0.0) || chain.size() >= 1000000)
            throw ConvergenceError("segment chain failed to reach the end of the range");
        chain.push_back(seg);
        x = seg.x0 + seg.length;
    }
    return chain;
}

/// Writes the spectrum as CSV with columns m,a,b; the m = 0 row carries a0
/// and an empty b field.
inline void write_spectrum_csv(const Spectrum& s, std::ostream& out) {
    out << "m,a,b\n";
    out << "0," << detail::format_full(s.a0) << ",\n";
    for (std::size_t m = 1; m <= s.harmonics(); ++m)
        out << m << ',' << detail::format_full(s.a[m - 1]) << ',' << detail::format_full(s.b[m - 1])
            << '\n';
}

inline void write_spectrum_csv(const Spectrum& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot open for writing");
    write_spectrum_csv(s, out);
}

/// Reads a spectrum CSV produced by write_spectrum_csv. The file stores
/// only coefficients; the phase and anchor are supplied by the caller.
inline Spectrum read_spectrum_csv(std::istream& in, PhaseFunction phase, double x0,
                                  const std::string& name = "<stream>") {
    Spectrum s;
    s.phase = std::move(phase);
    s.x0 = x0;
    std::string line;
    if (!detail::getline_trimmed(in, line) || line != "m,a,b")
        throw ParseError(name + " line 1: expected header 'm,a,b'");
    std::size_t lineno = 1;
    long expected_m = 0;
    bool have_a0 = false;
    while (detail::getline_trimmed(in, line)) {
        ++lineno;
        const std::string where = name + " line " + std::to_string(lineno);
        const auto c1 = line.find(',');
        const auto c2 = (c1 == std::string::npos) ? std::string::npos : line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw ParseError(where + ": expected three comma-separated fields");
        const std::string_view mf{line.data(), c1};
        const std::string_view af{line.data() + c1 + 1, c2 - c1 - 1};
        const std::string_view bf{line.data() + c2 + 1, line.size() - c2 - 1};
        const double mv = detail::parse_csv_double(mf, where);
        if (mv != static_cast<double>(expected_m))
            throw ParseError(where + ": expected harmonic index " + std::to_string(expected_m));
        if (expected_m == 0) {
            if (!bf.empty()) throw ParseError(where + ": the m = 0 row must leave b empty");
            s.a0 = detail::parse_csv_double(af, where);
            have_a0 = true;
        } else {
            s.a.push_back(detail::parse_csv_double(af, where));
            s.b.push_back(detail::parse_csv_double(bf, where));
        }
        ++expected_m;
    }
    if (!have_a0) throw ParseError(name + ": missing the m = 0 row");
    return s;
}

inline Spectrum read_spectrum_csv(const std::string& path, PhaseFunction phase, double x0) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    return read_spectrum_csv(in, std::move(phase), x0, path);
}

}  // namespace varper
