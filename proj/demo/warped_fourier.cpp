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
//
// Expands a warped two-harmonic signal over one segment of orthogonality
// and reconstructs it, printing the recovered coefficients and the largest
// off-diagonal Gram entry of the basis it used.

#include <cmath>
#include <cstdio>

#include "varper/varper.hpp"

int main() {
    const auto phase = varper::PhaseFunction::power_law(0.75);
    const auto f = [&](double x) {
        const double u = phase(x);
        return 0.25 + std::sin(u) - 0.5 * std::cos(3.0 * u);
    };

    const varper::Spectrum spectrum = varper::expand(f, phase, 0.0, 4);
    std::printf("a0 = %+.6f\n", spectrum.a0);
    for (std::size_t m = 1; m <= spectrum.harmonics(); ++m)
        std::printf("m = %zu: a = %+.6f  b = %+.6f\n", m, spectrum.a[m - 1], spectrum.b[m - 1]);

    double worst = 0.0;
    const varper::Segment seg = varper::make_segment(phase, 0.0);
    for (double x = seg.x0; x <= seg.x0 + seg.length; x += seg.length / 64.0)
        worst = std::max(worst, std::abs(varper::synthesize(spectrum, x) - f(x)));
    std::printf("max reconstruction error over the segment: %.3g\n", worst);

    const auto gram =
        varper::gram_matrix(phase, 4, seg, varper::IntegrationMethod::quadrature, 1e-9);
    std::printf("max off-diagonal Gram entry: %.3g\n", varper::max_off_diagonal(gram));
    return 0;
}
