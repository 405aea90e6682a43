// Copyright 2026 The fourport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end. Subcommands:
//
//   validate     per-bin unitarity residuals
//   transform    Fock or coherent input through one or all bins
//   factorize    two-mode block netlist of one or all bins
//   oracle-check closed formulas against sector evolution
//
// Exit codes: 0 all checks passed, 1 input or parse error, 2 check failure.

#pragma once

#include <algorithm>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fourport/fourport.hpp"

namespace fourport::cli {

enum ExitCode : int { kPass = 0, kInputError = 1, kCheckFailure = 2 };

inline constexpr double kAmplitudeLimit = 1e-9;
inline constexpr double kChainLimit = 1e-8;
inline constexpr double kRecompositionLimit = 1e-10;
inline constexpr double kFidelityLimit = 1e-6;
inline constexpr int kCoherentTruncation = 12;

struct Settings {
    std::string path;
    double tol = kDefaultTolerance;
    int cap = kDefaultCap;
    bool renormalize = false;
    bool oracle = false;
    std::optional<int> bin;
    std::optional<double> omega;
    std::string gauge = "identity";
    std::vector<int> fock;
    std::vector<double> coherent;
    std::string kind = "eight";
    int max_total = 3;
};

/// Thrown inside a command to stop with the given exit code.
struct Stop {
    int code;
    std::string message;
};

/// Outcome of one bin: its JSON report and the exit code it contributes.
struct BinResult {
    json report;
    int code = kPass;
};

inline DeviceSpectrum load(const Settings &s, bool validate_bins = true) {
    LoadOptions opts;
    opts.tol = s.tol;
    opts.renormalize = s.renormalize;
    opts.validate_bins = validate_bins;
    try {
        return load_spectrum(s.path, opts);
    } catch (const Error &e) {
        throw Stop{kInputError, e.what()};
    }
}

inline std::vector<std::size_t> selected_bins(const DeviceSpectrum &spectrum, const Settings &s) {
    if (spectrum.size() == 0) throw Stop{kInputError, "spectrum has no bins"};
    if (s.bin) {
        if (*s.bin < 0 || static_cast<std::size_t>(*s.bin) >= spectrum.size())
            throw Stop{kInputError, "--bin " + std::to_string(*s.bin) + " out of range (spectrum has " +
                                        std::to_string(spectrum.size()) + " bins)"};
        return {static_cast<std::size_t>(*s.bin)};
    }
    if (s.omega) return {spectrum.nearest(*s.omega)};
    std::vector<std::size_t> all(spectrum.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
}

inline json bin_header(const DeviceSpectrum &spectrum, std::size_t index) {
    return {{"bin", index}, {"omega", spectrum.bins[index].omega}};
}

/// One object for a selected bin, an array in bin order for a scan.
template <typename PerBin>
int over_bins(const DeviceSpectrum &spectrum, const Settings &s, std::ostream &out, std::ostream &err,
              PerBin &&per_bin) {
    const auto indices = selected_bins(spectrum, s);
    json reports = json::array();
    int code = kPass;
    for (std::size_t index : indices) {
        BinResult r;
        try {
            r = per_bin(spectrum.bins[index]);
        } catch (const Error &e) {
            r.code = e.code() == ErrorCode::ParseError ? kInputError : kCheckFailure;
            r.report = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
        }
        json report = bin_header(spectrum, index);
        report.update(r.report);
        if (r.code != kPass)
            err << "bin at omega=" << json(spectrum.bins[index].omega).dump() << ": "
                << (report.contains("message") ? report["message"].get<std::string>() : std::string("check failed"))
                << "\n";
        code = std::max(code, r.code);
        reports.push_back(std::move(report));
    }
    out << (s.bin || s.omega ? reports[0] : reports).dump(2) << "\n";
    return code;
}

inline int cmd_validate(const Settings &s, std::ostream &out, std::ostream &err) {
    const auto spectrum = load(s, false);
    json bins = json::array();
    bool all_pass = true;
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        const auto &bin = spectrum.bins[i];
        const auto report = validate(bin.matrices, s.tol);
        json entry = bin_header(spectrum, i);
        entry["width"] = bin.width;
        entry["residual"] = report.residual;
        bool pass = report.pass;
        if (!pass && s.renormalize) {
            try {
                const auto fixed = renormalize(bin.matrices.T, bin.matrices.A);
                const double after = unitarity_residual(fixed.T_prime, fixed.A_prime);
                entry["renormalized"] = {{"lambdas", fixed.lambdas}, {"X", matrix_to_json(fixed.X)}, {"residual", after}};
                pass = after <= s.tol;
            } catch (const Error &e) {
                entry["renormalized"] = {{"error", e.what()}};
            }
        }
        entry["pass"] = pass;
        if (!pass)
            err << "bin at omega=" << json(bin.omega).dump() << " fails: |TT^+ + AA^+ - I| = " << report.residual
                << " > " << s.tol << "\n";
        all_pass = all_pass && pass;
        bins.push_back(std::move(entry));
    }
    out << json{{"tol", s.tol}, {"pass", all_pass}, {"bins", bins}}.dump(2) << "\n";
    return all_pass ? kPass : kCheckFailure;
}

inline json occupation_json(const Occupation4 &n) { return json(n.n); }

inline json fock_json(const Occupation4 &n, const FockAmplitudes &amps, const FieldDensity &rho) {
    json amplitudes = json::array();
    for (const auto &[k, c] : amps.amps)
        amplitudes.push_back({{"k", occupation_json(k)}, {"re", c.real()}, {"im", c.imag()}});
    json density = json::array();
    const auto &basis = rho.basis();
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const Complex d = rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (std::abs(d) < kDropAmplitude) continue;
            density.push_back({{"bra", basis[i].k}, {"ket", basis[j].k}, {"re", d.real()}, {"im", d.imag()}});
        }
    return {{"input", occupation_json(n)}, {"amplitudes", amplitudes}, {"density", density}};
}

inline double amplitude_deviation(const FockAmplitudes &a, const FockAmplitudes &b) {
    double worst = 0.0;
    for (const auto &[k, c] : a.amps) worst = std::max(worst, std::abs(c - b.at(k)));
    for (const auto &[k, c] : b.amps) worst = std::max(worst, std::abs(c - a.at(k)));
    return worst;
}

inline CoherentVector parse_coherent(const std::vector<double> &values) {
    CoherentVector g;
    if (values.size() == 4) {
        for (int i = 0; i < 4; ++i) g.amplitudes(i) = values[static_cast<std::size_t>(i)];
    } else if (values.size() == 8) {
        for (int i = 0; i < 4; ++i)
            g.amplitudes(i) = Complex(values[static_cast<std::size_t>(2 * i)], values[static_cast<std::size_t>(2 * i + 1)]);
    } else {
        throw Stop{kInputError, "--coherent takes 4 real amplitudes or 8 values (re im per mode)"};
    }
    return g;
}

inline int cmd_transform(const Settings &s, std::ostream &out, std::ostream &err) {
    if (s.fock.empty() == s.coherent.empty()) throw Stop{kInputError, "transform needs exactly one of --fock or --coherent"};
    std::optional<Occupation4> fock;
    std::optional<CoherentVector> gamma;
    if (!s.fock.empty()) {
        if (s.fock.size() != 4) throw Stop{kInputError, "--fock takes four occupations n1 n2 n3 n4"};
        Occupation4 n;
        for (int i = 0; i < 4; ++i) {
            n[static_cast<std::size_t>(i)] = s.fock[static_cast<std::size_t>(i)];
            if (n[static_cast<std::size_t>(i)] < 0) throw Stop{kInputError, "--fock occupations must be non-negative"};
        }
        fock = n;
    } else {
        gamma = parse_coherent(s.coherent);
    }
    const auto spectrum = load(s);
    return over_bins(spectrum, s, out, err, [&](const SpectrumBin &bin) {
        const auto e = embed(bin.matrices, std::nullopt, s.tol);
        BinResult r;
        if (fock) {
            const auto amps = output_amplitudes(e, *fock, s.cap);
            const auto rho = reduce_to_field(amps.amps, fock->total());
            r.report = fock_json(*fock, amps, rho);
            if (s.oracle) {
                const FockOracle oracle(e, fock->total(), s.cap);
                const auto brute = oracle.evolve(*fock);
                const double dev = amplitude_deviation(amps, brute);
                const double dens = max_abs_difference(rho, partial_trace_device(brute));
                const bool pass = dev <= kAmplitudeLimit && dens <= kAmplitudeLimit;
                r.report["oracle"] = {{"max_deviation", dev},
                                      {"density_deviation", dens},
                                      {"pin_residual", oracle.pin_residual()},
                                      {"pass", pass}};
                if (!pass) r.code = kCheckFailure;
            }
        } else {
            const auto lambda = transform_coherent(e, *gamma);
            r.report = {{"gamma", vector_to_json(gamma->amplitudes)}, {"lambda", vector_to_json(lambda.amplitudes)}};
            if (s.oracle) {
                const FockOracle oracle(e, kCoherentTruncation, kCoherentTruncation);
                const auto check = coherent_fidelity(oracle, e.Lambda, *gamma);
                const bool pass = check.fidelity >= 1.0 - kFidelityLimit;
                r.report["oracle"] = {{"fidelity", check.fidelity},
                                      {"truncation", check.truncation},
                                      {"pin_residual", oracle.pin_residual()},
                                      {"pass", pass}};
                if (!pass) r.code = kCheckFailure;
            }
        }
        return r;
    });
}

inline json netlist_json(const std::vector<TwoModeBlock> &blocks) {
    json out = json::array();
    for (const auto &b : blocks) out.push_back({{"modes", b.modes}, {"label", b.label}, {"U", matrix_to_json(b.U)}});
    return out;
}

inline BinResult factorize_bin(const SpectrumBin &bin, const Settings &s) {
    BinResult r;
    const auto &d = bin.matrices;
    double residual = 0.0;
    if (s.kind == "lossless") {
        if (max_abs(d.A) > kDefaultTolerance) {
            r.code = kCheckFailure;
            r.report = {{"kind", s.kind},
                        {"error", "InvalidDevice"},
                        {"message", "lossless factorization needs A = 0, max |A| = " + json(max_abs(d.A)).dump()}};
            return r;
        }
        const auto f = factor_lossless(d.T, s.tol);
        std::vector<TwoModeBlock> blocks;
        json factors = json::array();
        for (const auto &factor : f.factors) {
            blocks.push_back({{1, 2}, factor.matrix(), factor.label});
            factors.push_back({{"label", factor.label},
                               {"parameter", complex_to_json(factor.parameter)},
                               {"generator", matrix_to_json(factor.generator)}});
        }
        residual = max_abs(f.product() - d.T);
        r.report = {{"kind", s.kind},
                    {"t", complex_to_json(f.t)},
                    {"r", complex_to_json(f.r)},
                    {"phi", f.phi},
                    {"factors", factors},
                    {"blocks", netlist_json(blocks)}};
    } else {
        FactorChain chain;
        if (s.kind == "five")
            chain = factor_five(d, s.tol);
        else
            chain = factor_eight(d, s.tol);
        const Mat4 reference = embed(d, std::nullopt, s.tol).Lambda;
        residual = max_abs(compose_chain_identity_gauge(chain) - reference);
        r.report = {{"kind", s.kind}, {"blocks", netlist_json(chain.blocks)}};
        if (chain.kind == ChainKind::five) {
            r.report["device_gauge"] = matrix_to_json(chain.device_gauge);
            const double raw = max_abs(compose_chain(chain) - embed(d, chain.device_gauge, s.tol).Lambda);
            r.report["gauged_residual"] = raw;
            residual = std::max(residual, raw);
        }
    }
    r.report["residual"] = residual;
    r.report["pass"] = residual <= kRecompositionLimit;
    if (residual > kRecompositionLimit) {
        r.code = kCheckFailure;
        r.report["message"] = "recomposition residual " + json(residual).dump();
    }
    return r;
}

inline int cmd_factorize(const Settings &s, std::ostream &out, std::ostream &err) {
    const auto spectrum = load(s);
    return over_bins(spectrum, s, out, err, [&](const SpectrumBin &bin) { return factorize_bin(bin, s); });
}

inline BinResult oracle_check_bin(const SpectrumBin &bin, const Settings &s) {
    BinResult r;
    const auto e = embed(bin.matrices, std::nullopt, s.tol);
    const FockOracle oracle(e, s.max_total, s.cap);
    double amp_dev = 0.0, dens_dev = 0.0, z_dev = 0.0;
    for (int total = 0; total <= s.max_total; ++total)
        for (const auto &n : sector_states(total)) {
            const auto closed = output_amplitudes(e, n, s.cap);
            const auto brute = oracle.evolve(n);
            amp_dev = std::max(amp_dev, amplitude_deviation(closed, brute));
            const auto rho = reduce_to_field(closed.amps, total);
            dens_dev = std::max(dens_dev, max_abs_difference(rho, partial_trace_device(brute)));
            if (n.field_only()) z_dev = std::max(z_dev, max_abs_difference(rho, density_via_z(e, n, s.cap)));
        }
    const auto five = factor_five(bin.matrices, s.tol);
    const auto eight = factor_eight(bin.matrices, s.tol);
    const auto gauged = embed(bin.matrices, five.device_gauge, s.tol);
    double chain_dev = 0.0;
    for (int total = 0; total <= s.max_total; ++total) {
        chain_dev = std::max(chain_dev, max_abs(chain_sector_unitary(eight, total, s.cap) - oracle.sector(total).U));
        chain_dev = std::max(chain_dev, max_abs(chain_sector_unitary(five, total, s.cap) -
                                                    sector_unitary(gauged.Phi, total, s.cap).U));
    }
    const bool pass = amp_dev <= kAmplitudeLimit && dens_dev <= kAmplitudeLimit && z_dev <= 1e-10 &&
                      chain_dev <= kChainLimit;
    r.report = {{"max_total", s.max_total},
                {"pin_residual", oracle.pin_residual()},
                {"amplitude_deviation", amp_dev},
                {"density_deviation", dens_dev},
                {"z_density_deviation", z_dev},
                {"chain_deviation", chain_dev},
                {"pass", pass}};
    if (!pass) {
        r.code = kCheckFailure;
        r.report["message"] = "oracle deviation above limit";
    }
    return r;
}

inline int cmd_oracle_check(const Settings &s, std::ostream &out, std::ostream &err) {
    if (s.max_total < 0 || s.max_total > s.cap)
        throw Stop{kCheckFailure, "--max-total " + std::to_string(s.max_total) + " exceeds cap " + std::to_string(s.cap)};
    const auto spectrum = load(s);
    return over_bins(spectrum, s, out, err, [&](const SpectrumBin &bin) { return oracle_check_bin(bin, s); });
}

/// Runs the tool on `args` (program name excluded).
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Settings s;
    CLI::App app{"fourport: lossy four-port device engine", "fourport"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--tol", s.tol, "Validation tolerance")->check(CLI::PositiveNumber);
    app.add_option("--cap", s.cap, "Largest total number of quanta")->check(CLI::Range(0, 12));
    app.add_flag("--renormalize", s.renormalize, "Rescale bins whose output commutator differs from I");
    app.add_flag("--oracle", s.oracle, "Cross-check against sector evolution");
    auto *bin = app.add_option("--bin", s.bin, "Select a bin by index");
    app.add_option("--omega", s.omega, "Select the bin nearest to this frequency")->excludes(bin);
    app.add_option("--gauge", s.gauge, "Device gauge (reserved)")->check(CLI::IsMember({"identity"}));

    auto *validate_cmd = app.add_subcommand("validate", "Report per-bin unitarity residuals");
    validate_cmd->add_option("spectrum", s.path, "Spectrum JSON file")->required();

    auto *transform_cmd = app.add_subcommand("transform", "Transform a Fock or coherent input");
    transform_cmd->add_option("spectrum", s.path, "Spectrum JSON file")->required();
    auto *fock = transform_cmd->add_option("--fock", s.fock, "Occupations n1 n2 n3 n4")->expected(4);
    transform_cmd->add_option("--coherent", s.coherent, "Amplitudes: 4 reals or 8 values re im")
        ->expected(4, 8)
        ->excludes(fock);

    auto *factorize_cmd = app.add_subcommand("factorize", "Two-mode block decomposition");
    factorize_cmd->add_option("spectrum", s.path, "Spectrum JSON file")->required();
    factorize_cmd->add_option("--kind", s.kind, "five, eight or lossless")
        ->check(CLI::IsMember({"five", "eight", "lossless"}));

    auto *oracle_cmd = app.add_subcommand("oracle-check", "Compare closed formulas with sector evolution");
    oracle_cmd->add_option("spectrum", s.path, "Spectrum JSON file")->required();
    oracle_cmd->add_option("--max-total", s.max_total, "Largest input total to check")->check(CLI::NonNegativeNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kPass;
    } catch (const CLI::ParseError &e) {
        err << "fourport: " << e.what() << "\n";
        return kInputError;
    }

    try {
        if (validate_cmd->parsed()) return cmd_validate(s, out, err);
        if (transform_cmd->parsed()) return cmd_transform(s, out, err);
        if (factorize_cmd->parsed()) return cmd_factorize(s, out, err);
        if (oracle_cmd->parsed()) return cmd_oracle_check(s, out, err);
    } catch (const Stop &stop) {
        err << "fourport: " << stop.message << "\n";
        return stop.code;
    } catch (const Error &e) {
        err << "fourport: " << e.what() << "\n";
        return e.code() == ErrorCode::ParseError ? kInputError : kCheckFailure;
    } catch (const std::exception &e) {
        err << "fourport: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace fourport::cli
