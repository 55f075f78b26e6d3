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
// Prints how the period of sin x^alpha drifts with x, for a slowing rhythm
// (alpha = 3/4), a quickening one (alpha = 4/3) and the classical sinusoid.

#include <cstdio>

#include "varper/varper.hpp"

int main() {
    const double alphas[] = {0.75, 4.0 / 3.0, 1.0};
    for (const double alpha : alphas) {
        std::printf("alpha = %-8.5g  ", alpha);
        for (const double x : {0.0, 5.0, 15.0, 30.0})
            std::printf("T(%5.1f) = %-9.4f", x, varper::forward_period_power(alpha, x).value);
        std::printf("\n");
    }

    const auto phase = varper::PhaseFunction::power_plus_sine(4.0 / 3.0, 1.2, 1.0);
    const auto sig = varper::generate(phase, 1, varper::BasisKind::sine, 0.0, 15.0, 1500);
    varper::write_signal_csv(sig, std::string("powsin_signal.csv"));
    const auto cycles = varper::count_cycles(sig, phase, 1);
    std::printf("sin(x^(4/3) + 1.2 sin x) on [0, 15]: %zu full cycles + %.3f, "
                "written to powsin_signal.csv\n",
                cycles.complete, cycles.fractional);
    return 0;
}
