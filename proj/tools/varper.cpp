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
// varper: command-line front end for variable-period analysis. Every
// subcommand emits CSV or key=value lines with 17 significant digits, so
// identical invocations produce byte-identical output. Exit codes: 0 on
// success, 1 on domain/validation errors, 2 on convergence/accuracy errors.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "varper/varper.hpp"

namespace {

using varper::detail::format_full;

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

Range parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw varper::DomainError("invalid range '" + text + "': expected LO:HI");
    Range r;
    r.lo = varper::parse_number_or_ratio(std::string_view(text).substr(0, colon));
    r.hi = varper::parse_number_or_ratio(std::string_view(text).substr(colon + 1));
    if (!(r.lo < r.hi)) throw varper::DomainError("invalid range '" + text + "': need LO < HI");
    return r;
}

/// Writes to the given path, or to stdout when the path is empty.
class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw varper::ParseError(path + ": cannot open for writing");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void write_matrix_csv(const varper::GramMatrix& m, std::ostream& out) {
    for (const auto& row : m) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j > 0) out << ',';
            out << format_full(row[j]);
        }
        out << '\n';
    }
}

varper::BasisKind parse_kind(const std::string& text) {
    if (text == "sine") return varper::BasisKind::sine;
    if (text == "cosine") return varper::BasisKind::cosine;
    throw varper::DomainError("invalid kind '" + text + "': expected sine or cosine");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"periodic functions with a variable period: periods, orthogonality, "
                 "warped Fourier analysis and synthetic rhythmic signals"};
    app.require_subcommand(1);
    int exit_code = 0;

    // period
    std::string period_phase;
    double period_x = 0.0;
    double period_tol = 1e-12;
    bool period_backward = false;
    auto* period = app.add_subcommand("period", "Variable period at a point, with its residual");
    period->add_option("--phase", period_phase, "Phase: id, pow:ALPHA or powsin:ALPHA:AMP:FREQ")
        ->required();
    period->add_option("--x", period_x, "Query point")->required();
    period->add_flag("--backward", period_backward, "Backward period instead of forward");
    period->add_option("--tol", period_tol, "Inversion tolerance in phase units");
    period->callback([&]() {
        const auto phase = varper::parse_phase_spec(period_phase);
        const varper::PeriodResult r =
            period_backward ? varper::backward_period_general(phase, period_x, period_tol)
                            : varper::forward_period_general(phase, period_x, period_tol);
        std::cout << "x=" << format_full(r.x) << '\n'
                  << "direction=" << (period_backward ? "backward" : "forward") << '\n'
                  << "period=" << format_full(r.value) << '\n'
                  << "residual=" << format_full(r.residual) << '\n';
    });

    // verify
    std::string verify_phase;
    std::string verify_range;
    std::size_t verify_n = 500;
    double verify_tol = 1e-12;
    auto* verify = app.add_subcommand(
        "verify", "Scan periodicity and consistency residuals and the period slope over a range");
    verify->add_option("--phase", verify_phase, "Phase spec")->required();
    verify->add_option("--range", verify_range, "Scan range LO:HI")->required();
    verify->add_option("--n", verify_n, "Grid points")->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
    verify->add_option("--tol", verify_tol, "Inversion tolerance in phase units");
    verify->callback([&]() {
        const auto phase = varper::parse_phase_spec(verify_phase);
        const Range r = parse_range(verify_range);
        double max_periodicity = 0.0;
        double max_forward = 0.0;
        std::optional<double> max_backward;
        std::size_t backward_defined = 0;
        for (std::size_t i = 0; i < verify_n; ++i) {
            const double x =
                r.lo + (r.hi - r.lo) * static_cast<double>(i) / static_cast<double>(verify_n - 1);
            max_periodicity = std::max(max_periodicity, varper::check_periodicity(phase, x, verify_tol));
            const auto c = varper::check_period_consistency(phase, x, verify_tol);
            max_forward = std::max(max_forward, c.forward);
            if (c.backward) {
                max_backward = std::max(max_backward.value_or(0.0), *c.backward);
                ++backward_defined;
            }
        }
        const double min_slope = varper::check_derivative_bound(phase, r.lo, r.hi, verify_n, verify_tol);
        const bool ok = max_periodicity <= 1e-8 && max_forward <= 1e-9 &&
                        (!max_backward || *max_backward <= 1e-9) && min_slope > -1.0;
        std::cout << "range=" << format_full(r.lo) << ':' << format_full(r.hi) << '\n'
                  << "n=" << verify_n << '\n'
                  << "max_periodicity_residual=" << format_full(max_periodicity) << '\n'
                  << "max_consistency_forward=" << format_full(max_forward) << '\n'
                  << "backward_defined=" << backward_defined << '\n'
                  << "max_consistency_backward="
                  << (max_backward ? format_full(*max_backward) : "nan") << '\n'
                  << "min_period_derivative=" << format_full(min_slope) << '\n'
                  << "status=" << (ok ? "ok" : "fail") << '\n';
        if (!ok) exit_code = 2;
    });

    // gram
    std::string gram_phase;
    double gram_x0 = 0.0;
    int gram_harmonics = 4;
    std::string gram_method = "both";
    double gram_tol = 1e-9;
    std::string gram_out;
    auto* gram = app.add_subcommand("gram", "Gram matrix of the warped system over one segment");
    gram->add_option("--phase", gram_phase, "Phase spec")->required();
    gram->add_option("--x0", gram_x0, "Segment anchor");
    gram->add_option("--harmonics", gram_harmonics, "Highest harmonic index")
        ->check(CLI::Range(1, 64));
    gram->add_option("--method", gram_method, "closed, quadrature or both")
        ->check(CLI::IsMember({"closed", "quadrature", "both"}));
    gram->add_option("--tol", gram_tol, "Quadrature tolerance");
    gram->add_option("--out", gram_out, "Write the matrix CSV to this file instead of stdout");
    gram->callback([&]() {
        const auto phase = varper::parse_phase_spec(gram_phase);
        const varper::Segment seg = varper::make_segment(phase, gram_x0);
        std::optional<varper::GramMatrix> closed;
        std::optional<varper::GramMatrix> quadrature;
        if (gram_method != "quadrature")
            closed = varper::gram_matrix(phase, gram_harmonics, seg,
                                         varper::IntegrationMethod::closed_form);
        if (gram_method != "closed")
            quadrature = varper::gram_matrix(phase, gram_harmonics, seg,
                                             varper::IntegrationMethod::quadrature, gram_tol);
        const varper::GramMatrix& shown = closed ? *closed : *quadrature;
        OutputTarget out(gram_out);
        write_matrix_csv(shown, out.stream());
        std::cout << "max_offdiag=" << format_full(varper::max_off_diagonal(shown)) << '\n';
        if (closed && quadrature) {
            const double discrepancy = varper::max_entry_difference(*closed, *quadrature);
            std::cout << "max_discrepancy=" << format_full(discrepancy) << '\n';
            if (discrepancy > 1e-5) {
                std::cout << "status=fail\n";
                exit_code = 2;
            }
        }
    });

    // expand
    std::string expand_phase;
    double expand_x0 = 0.0;
    int expand_harmonics = 8;
    std::string expand_input;
    std::string expand_output;
    double expand_tol = 1e-9;
    auto* expand =
        app.add_subcommand("expand", "Expand a sampled signal over one segment of orthogonality");
    expand->add_option("--phase", expand_phase, "Phase spec")->required();
    expand->add_option("--x0", expand_x0, "Segment anchor");
    expand->add_option("--harmonics", expand_harmonics, "Number of harmonics")
        ->check(CLI::Range(0, 256));
    expand->add_option("--input", expand_input, "Signal CSV (columns x,y)")->required();
    expand->add_option("--output", expand_output, "Spectrum CSV (columns m,a,b); stdout if omitted");
    expand->add_option("--tol", expand_tol, "Quadrature tolerance");
    expand->callback([&]() {
        const auto phase = varper::parse_phase_spec(expand_phase);
        const varper::SampledSignal sig = varper::read_signal_csv(expand_input);
        const auto f = [&sig](double x) { return varper::interpolate(sig, x); };
        const varper::Spectrum s = varper::expand(f, phase, expand_x0, expand_harmonics, expand_tol);
        OutputTarget out(expand_output);
        varper::write_spectrum_csv(s, out.stream());
    });

    // synth
    std::string synth_phase;
    double synth_x0 = 0.0;
    std::string synth_input;
    std::string synth_range;
    std::size_t synth_n = 1000;
    std::string synth_out;
    auto* synth = app.add_subcommand("synth", "Evaluate a spectrum back into a sampled signal");
    synth->add_option("--phase", synth_phase, "Phase spec (must match the expansion)")->required();
    synth->add_option("--x0", synth_x0, "Segment anchor used by the expansion");
    synth->add_option("--input", synth_input, "Spectrum CSV (columns m,a,b)")->required();
    synth->add_option("--range", synth_range, "Evaluation range LO:HI; the segment if omitted");
    synth->add_option("--n", synth_n, "Samples")->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
    synth->add_option("--out", synth_out, "Signal CSV output; stdout if omitted");
    synth->callback([&]() {
        const auto phase = varper::parse_phase_spec(synth_phase);
        const varper::Spectrum s = varper::read_spectrum_csv(synth_input, phase, synth_x0);
        const varper::Segment seg = varper::make_segment(phase, synth_x0);
        const Range r = synth_range.empty() ? Range{seg.x0, seg.x0 + seg.length}
                                            : parse_range(synth_range);
        if (r.lo < seg.x0 - 1e-12 || r.hi > seg.x0 + seg.length + 1e-12)
            std::cerr << "varper: note: range extends outside the expansion segment ["
                      << format_full(seg.x0) << ", " << format_full(seg.x0 + seg.length)
                      << "]; values there are extrapolations\n";
        varper::SampledSignal sig;
        sig.xs.reserve(synth_n);
        sig.ys.reserve(synth_n);
        for (std::size_t i = 0; i < synth_n; ++i) {
            const double x = (i + 1 == synth_n)
                                 ? r.hi
                                 : r.lo + (r.hi - r.lo) * static_cast<double>(i) /
                                       static_cast<double>(synth_n - 1);
            sig.xs.push_back(x);
            sig.ys.push_back(varper::synthesize(s, x));
        }
        OutputTarget out(synth_out);
        varper::write_signal_csv(sig, out.stream());
    });

    // gen
    std::string gen_phase;
    int gen_m = 1;
    std::string gen_kind = "sine";
    std::string gen_range;
    std::size_t gen_n = 1000;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Generate a sampled sin(m g(x)) or cos(m g(x)) signal");
    gen->add_option("--phase", gen_phase, "Phase spec")->required();
    gen->add_option("--m", gen_m, "Harmonic index")->check(CLI::Range(1, 1000000));
    gen->add_option("--kind", gen_kind, "sine or cosine")->check(CLI::IsMember({"sine", "cosine"}));
    gen->add_option("--range", gen_range, "Sampling range LO:HI")->required();
    gen->add_option("--n", gen_n, "Samples")->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
    gen->add_option("--out", gen_out, "Signal CSV output; stdout if omitted");
    gen->callback([&]() {
        const auto phase = varper::parse_phase_spec(gen_phase);
        const Range r = parse_range(gen_range);
        const varper::SampledSignal sig =
            varper::generate(phase, gen_m, parse_kind(gen_kind), r.lo, r.hi, gen_n);
        OutputTarget out(gen_out);
        varper::write_signal_csv(sig, out.stream());
    });

    // cycles
    std::string cycles_input;
    std::string cycles_phase;
    int cycles_m = 1;
    auto* cycles = app.add_subcommand("cycles", "Count oscillation cycles in a sampled signal");
    cycles->add_option("--input", cycles_input, "Signal CSV")->required();
    cycles->add_option("--phase", cycles_phase,
                       "Phase spec; enables the exact fractional remainder");
    cycles->add_option("--m", cycles_m, "Harmonic index of the generating signal")
        ->check(CLI::Range(1, 1000000));
    cycles->callback([&]() {
        const varper::SampledSignal sig = varper::read_signal_csv(cycles_input);
        std::cout << "samples=" << sig.size() << '\n';
        if (cycles_phase.empty()) {
            const varper::CycleCount c = varper::count_cycles(sig);
            std::cout << "complete=" << c.complete << '\n';
        } else {
            const auto phase = varper::parse_phase_spec(cycles_phase);
            const varper::CycleCount c = varper::count_cycles(sig, phase, cycles_m);
            std::cout << "complete=" << c.complete << '\n'
                      << "fractional=" << format_full(c.fractional) << '\n'
                      << "total=" << format_full(static_cast<double>(c.complete) + c.fractional)
                      << '\n';
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const varper::ConvergenceError& e) {
        std::cerr << "varper: " << e.what() << '\n';
        return 2;
    } catch (const varper::Error& e) {
        std::cerr << "varper: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}
