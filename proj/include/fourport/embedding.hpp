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

#pragma once

#include <optional>

#include "device.hpp"

namespace fourport {

/// Unitary dilation of a lossy device onto the four modes (a1, a2, g1, g2):
///
///   Lambda = [[ T,          A        ],
///             [ -D S Q_T,   D C Q_A  ]]
///
/// with C = sqrt(TT^+), S = sqrt(AA^+), and Q_T, Q_A the polar unitaries
/// of T and A (equal to C^-1 T and S^-1 A wherever those inverses exist).
/// Phi is the Hermitian generator, exp(-i Phi) = Lambda.
struct LambdaEmbedding {
    Mat4 Lambda = Mat4::Identity();
    Mat2 C = Mat2::Identity();
    Mat2 S = Mat2::Zero();
    Mat2 D = Mat2::Identity();
    Mat2 Q_T = Mat2::Identity();
    Mat2 Q_A = Mat2::Identity();
    Mat4 Phi = Mat4::Zero();
    bool near_branch_cut = false;

    Mat2 T() const { return Lambda.topLeftCorner<2, 2>(); }
    Mat2 A() const { return Lambda.topRightCorner<2, 2>(); }
};

inline LambdaEmbedding embed(const DeviceMatrices &d, const std::optional<Mat2> &gauge = std::nullopt,
                             double tol = kDefaultTolerance) {
    const auto report = validate(d, tol);
    if (!report.pass)
        throw Error(ErrorCode::InvalidDevice, "embed: |TT^+ + AA^+ - I| = " + std::to_string(report.residual));
    LambdaEmbedding e;
    if (gauge) {
        if (!is_finite(*gauge) || !is_unitary(*gauge, tol))
            throw Error(ErrorCode::NonUnitaryGauge, "embed: gauge matrix D is not unitary");
        e.D = *gauge;
    }
    const auto polar_t = polar_decomposition(d.T);
    const auto polar_a = polar_decomposition(d.A);
    e.C = polar_t.positive;
    e.S = polar_a.positive;
    e.Q_T = polar_t.unitary;
    e.Q_A = polar_a.unitary;
    e.Lambda = blocks(d.T, d.A, -e.D * e.S * e.Q_T, e.D * e.C * e.Q_A);
    const auto log = unitary_log_checked(e.Lambda, 10 * tol);
    e.Phi = log.generator;
    e.near_branch_cut = log.near_branch_cut;
    return e;
}

struct LosslessGenerator {
    Mat2 V = Mat2::Zero();  // exp(-iV) = T
};

inline LosslessGenerator lossless_generator(const Mat2 &t, double tol = kDefaultTolerance) {
    if (!is_finite(t) || !is_unitary(t, tol))
        throw Error(ErrorCode::NotUnitary, "lossless_generator: T is not unitary");
    return {unitary_log(t, tol)};
}

}  // namespace fourport
