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

/**
 * @file factorization.hpp
 * @brief Decomposition of the 4x4 device unitary into two-mode U(2) blocks.
 *
 * Modes are numbered 1..4: 1, 2 are the light channels a1, a2 and 3, 4 the
 * device channels g1, g2. A chain lists blocks left to right in the order of
 * the matrix (and operator) product, so the rightmost block acts first on
 * the incoming operators.
 */

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "embedding.hpp"

namespace fourport {

struct TwoModeBlock {
    std::array<int, 2> modes{1, 2};
    Mat2 U = Mat2::Identity();
    std::string label;
};

enum class ChainKind { five, eight, lossless };

constexpr std::string_view to_string(ChainKind kind) {
    switch (kind) {
        case ChainKind::five: return "five";
        case ChainKind::eight: return "eight";
        case ChainKind::lossless: return "lossless";
    }
    return "unknown";
}

struct FactorChain {
    ChainKind kind = ChainKind::eight;
    std::vector<TwoModeBlock> blocks;
    // Gauge D of the device output rows realized by the chain: the product
    // equals embed(d, D).Lambda. Identity for the eight-block form.
    Mat2 device_gauge = Mat2::Identity();
};

/// The constant two-mode block P = (1/sqrt2) [[1, i], [i, 1]].
inline Mat2 beam_splitter_P() {
    const double h = 1.0 / std::sqrt(2.0);
    Mat2 p;
    p << h, Complex(0.0, h), Complex(0.0, h), h;
    return p;
}

inline Mat4 embed_block(const TwoModeBlock &block) {
    const int i = block.modes[0] - 1;
    const int j = block.modes[1] - 1;
    if (i < 0 || i > 3 || j < 0 || j > 3 || i == j)
        throw Error(ErrorCode::InvalidDevice, "embed_block: invalid mode pair");
    Mat4 out = Mat4::Identity();
    out(i, i) = block.U(0, 0);
    out(i, j) = block.U(0, 1);
    out(j, i) = block.U(1, 0);
    out(j, j) = block.U(1, 1);
    return out;
}

inline Mat4 compose_chain(const FactorChain &chain) {
    Mat4 out = Mat4::Identity();
    for (const auto &block : chain.blocks) out = (out * embed_block(block)).eval();
    return out;
}

/// Composition with the chain's device gauge removed from the device rows,
/// i.e. the value to compare against embed(d).Lambda with D = I.
inline Mat4 compose_chain_identity_gauge(const FactorChain &chain) {
    return block_diag(Mat2::Identity(), chain.device_gauge.adjoint()) * compose_chain(chain);
}

namespace detail {

inline LambdaEmbedding checked_embedding(const DeviceMatrices &d, double tol) {
    const auto report = validate(d, tol);
    if (!report.pass)
        throw Error(ErrorCode::InvalidDevice, "factorization: |TT^+ + AA^+ - I| = " + std::to_string(report.residual));
    return embed(d, std::nullopt, tol);
}

inline Mat2 rotation(double c, double s) {
    const double norm = std::hypot(c, s);
    c /= norm;
    s /= norm;
    Mat2 r;
    r << c, s, -s, c;
    return r;
}

}  // namespace detail

/// Five-block form. D = W^+ diagonalizes C and S simultaneously (W holds the
/// eigenvectors of C, eigenvalues descending), which turns the middle factor
/// into two independent rotations on (a1, g1) and (a2, g2) with
/// cos(theta_i), sin(theta_i) the eigenvalues of C and S.
inline FactorChain factor_five(const DeviceMatrices &d, double tol = kDefaultTolerance) {
    const auto e = detail::checked_embedding(d, tol);
    auto eig = hermitian_eigen(e.C);
    // A degenerate C is a multiple of I and every basis diagonalizes it.
    if (eig.values(0) - eig.values(1) <= 1e-12) eig.vectors = Mat2::Identity();
    const Mat2 w = eig.vectors;
    const Mat2 s_diag = w.adjoint() * e.S * w;
    const Mat2 gauge = w.adjoint();

    FactorChain chain;
    chain.kind = ChainKind::five;
    chain.device_gauge = gauge;
    chain.blocks = {
        {{1, 2}, gauge.adjoint(), "D^+"},
        {{1, 3}, detail::rotation(eig.values(0), s_diag(0, 0).real()), "rot(theta1)"},
        {{2, 4}, detail::rotation(eig.values(1), s_diag(1, 1).real()), "rot(theta2)"},
        {{1, 2}, gauge * e.Q_T, "D C^-1 T"},
        {{3, 4}, gauge * e.Q_A, "D S^-1 A"},
    };
    return chain;
}

/// Eight-block form with D = I: the middle factor [[C, S], [-S, C]] is
/// conjugated by two P blocks on (a1, g1) and (a2, g2) into diag(C - iS, C + iS).
inline FactorChain factor_eight(const DeviceMatrices &d, double tol = kDefaultTolerance) {
    const auto e = detail::checked_embedding(d, tol);
    const Mat2 p = beam_splitter_P();
    const Mat2 c_minus = e.C - kI * e.S;
    const Mat2 c_plus = e.C + kI * e.S;

    FactorChain chain;
    chain.kind = ChainKind::eight;
    chain.blocks = {
        {{1, 3}, p.adjoint(), "P^+"},
        {{2, 4}, p.adjoint(), "P^+"},
        {{3, 4}, c_plus, "C+iS"},
        {{1, 2}, c_minus, "C-iS"},
        {{2, 4}, p, "P"},
        {{1, 3}, p, "P"},
        {{3, 4}, e.Q_A, "S^-1 A"},
        {{1, 2}, e.Q_T, "C^-1 T"},
    };
    return chain;
}

/// One factor exp(a^+ G a) of the lossless disentangling product, G a 2x2
/// generator on the light modes (not anti-Hermitian in general).
struct ElementaryFactor {
    std::string label;
    Complex parameter;
    Mat2 generator = Mat2::Zero();

    Mat2 matrix() const { return expm(generator); }
};

/// T = e^{i phi} [[t, r], [-r*, t*]] written as the ordered product
///   exp{i phi (n1 + n2)} exp{ln t n1} exp{-r* a2^+ a1} exp{r a1^+ a2} exp{-ln t n2}.
struct LosslessFactorization {
    Complex t;
    Complex r;
    double phi = 0.0;
    std::array<ElementaryFactor, 5> factors;

    Mat2 product() const {
        Mat2 out = Mat2::Identity();
        for (const auto &f : factors) out = (out * f.matrix()).eval();
        return out;
    }
};

inline LosslessFactorization factor_lossless(const Mat2 &T, double tol = kDefaultTolerance) {
    if (!is_finite(T) || !is_unitary(T, tol))
        throw Error(ErrorCode::NotUnitary, "factor_lossless: T is not unitary");
    LosslessFactorization out;
    out.phi = 0.5 * std::arg(T.determinant());
    const Complex unphase = std::polar(1.0, -out.phi);
    out.t = T(0, 0) * unphase;
    out.r = T(0, 1) * unphase;
    if (std::abs(out.t) < 1e-12)
        throw Error(ErrorCode::ZeroTransmittance, "factor_lossless: |t| = " + std::to_string(std::abs(out.t)));
    const Complex log_t = std::log(out.t);

    Mat2 phase = Mat2::Zero();
    phase(0, 0) = phase(1, 1) = kI * out.phi;
    Mat2 n1 = Mat2::Zero();
    n1(0, 0) = log_t;
    Mat2 lower = Mat2::Zero();
    lower(1, 0) = -std::conj(out.r);
    Mat2 raise = Mat2::Zero();
    raise(0, 1) = out.r;
    Mat2 n2 = Mat2::Zero();
    n2(1, 1) = -log_t;

    out.factors = {{
        {"phase", Complex(out.phi, 0.0), phase},
        {"ln t n1", log_t, n1},
        {"-r* a2^+ a1", -std::conj(out.r), lower},
        {"r a1^+ a2", out.r, raise},
        {"-ln t n2", -log_t, n2},
    }};
    return out;
}

}  // namespace fourport
