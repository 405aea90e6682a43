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

// Device spectrum files:
//
//   {"bins": [{"omega": w, "width": dw, "T": M, "A": M}, ...]}
//
// where M is a 2x2 row-major array of [re, im] pairs.

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"

#include "device.hpp"

namespace fourport {

using json = nlohmann::json;

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw Error(ErrorCode::ParseError, "expected [re, im] pair, got " + j.dump());
    return {j[0].get<double>(), j[1].get<double>()};
}

template <typename Derived>
json matrix_to_json(const Eigen::MatrixBase<Derived> &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <typename Derived>
json vector_to_json(const Eigen::MatrixBase<Derived> &v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

inline Mat2 mat2_from_json(const json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
        j[1].size() != 2)
        throw Error(ErrorCode::ParseError, "expected 2x2 matrix of [re, im] pairs, got " + j.dump());
    Mat2 m;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) m(r, c) = complex_from_json(j[r][c]);
    return m;
}

struct LoadOptions {
    double tol = kDefaultTolerance;
    bool renormalize = false;
    // When false, bins are only checked for structure and ordering, so a
    // caller can report residuals of every bin itself.
    bool validate_bins = true;
};

namespace detail {

inline std::string locate(std::string_view text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

inline double number_field(const json &bin, const char *key, std::size_t index) {
    if (!bin.contains(key) || !bin[key].is_number())
        throw Error(ErrorCode::ParseError,
                    "bin " + std::to_string(index) + ": missing numeric field \"" + std::string(key) + "\"");
    return bin[key].get<double>();
}

}  // namespace detail

/// Parses and validates a spectrum document. Failing bins are rejected,
/// or rescaled through renormalize() when `options.renormalize` is set.
inline DeviceSpectrum parse_spectrum(std::string_view text, const LoadOptions &options = {}) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        throw Error(ErrorCode::ParseError, detail::locate(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("bins") || !doc["bins"].is_array())
        throw Error(ErrorCode::ParseError, "top level must be an object with a \"bins\" array");

    DeviceSpectrum spectrum;
    const json &bins = doc["bins"];
    for (std::size_t i = 0; i < bins.size(); ++i) {
        const json &b = bins[i];
        if (!b.is_object()) throw Error(ErrorCode::ParseError, "bin " + std::to_string(i) + " is not an object");
        SpectrumBin bin;
        bin.omega = detail::number_field(b, "omega", i);
        bin.width = detail::number_field(b, "width", i);
        if (!b.contains("T") || !b.contains("A"))
            throw Error(ErrorCode::ParseError, "bin " + std::to_string(i) + ": missing \"T\" or \"A\"");
        try {
            bin.matrices.T = mat2_from_json(b["T"]);
            bin.matrices.A = mat2_from_json(b["A"]);
        } catch (const Error &e) {
            throw Error(ErrorCode::ParseError, "bin " + std::to_string(i) + ": " + e.what());
        }
        bin.matrices.omega = bin.omega;

        const std::string where = "bin at omega=" + json(bin.omega).dump();
        if (!(bin.width > 0.0)) throw Error(ErrorCode::ValidationError, where + ": width must be positive");
        if (!spectrum.bins.empty() && !(bin.omega > spectrum.bins.back().omega))
            throw Error(ErrorCode::ValidationError, where + ": omega must increase strictly");

        const auto report = validate(bin.matrices, options.tol);
        if (options.validate_bins && !report.pass) {
            if (!options.renormalize)
                throw Error(ErrorCode::ValidationError,
                            where + ": |TT^+ + AA^+ - I| = " + json(report.residual).dump());
            try {
                auto fixed = renormalize(bin.matrices.T, bin.matrices.A);
                bin.matrices.T = fixed.T_prime;
                bin.matrices.A = fixed.A_prime;
                bin.renormalization = fixed;
            } catch (const Error &e) {
                throw Error(ErrorCode::ValidationError, where + ": " + e.what());
            }
        }
        spectrum.bins.push_back(std::move(bin));
    }
    return spectrum;
}

inline DeviceSpectrum load_spectrum(const std::string &path, const LoadOptions &options = {}) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_spectrum(buffer.str(), options);
}

inline json spectrum_to_json(const DeviceSpectrum &spectrum) {
    json bins = json::array();
    for (const auto &b : spectrum.bins)
        bins.push_back({{"omega", b.omega},
                        {"width", b.width},
                        {"T", matrix_to_json(b.matrices.T)},
                        {"A", matrix_to_json(b.matrices.A)}});
    return {{"bins", bins}};
}

}  // namespace fourport
