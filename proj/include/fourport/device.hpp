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

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "smallmat.hpp"

namespace fourport {

inline constexpr double kDefaultTolerance = 1e-10;

/// Transmission matrix T and absorption matrix A of the four-port device at
/// one frequency. Output light b = T a + A g for incoming light a and device
/// excitations g. `omega` is carried along as a label only.
struct DeviceMatrices {
    double omega = 0.0;
    Mat2 T = Mat2::Identity();
    Mat2 A = Mat2::Zero();
};

struct ValidationReport {
    double residual = 0.0;  // max |(TT^+ + AA^+ - I)_ij|
    double tol = kDefaultTolerance;
    bool pass = false;
};

inline double unitarity_residual(const Mat2 &t, const Mat2 &a) {
    return max_abs(t * t.adjoint() + a * a.adjoint() - Mat2::Identity());
}

inline ValidationReport validate(const DeviceMatrices &d, double tol = kDefaultTolerance) {
    ValidationReport report;
    report.tol = tol;
    if (!is_finite(d.T) || !is_finite(d.A)) {
        report.residual = std::numeric_limits<double>::infinity();
        return report;
    }
    report.residual = unitarity_residual(d.T, d.A);
    report.pass = report.residual <= tol;
    return report;
}

struct RenormalizationResult {
    Mat2 X = Mat2::Identity();          // unitary with X K X^+ = diag(lambdas)
    std::array<double, 2> lambdas{1.0, 1.0};
    Mat2 T_prime = Mat2::Identity();
    Mat2 A_prime = Mat2::Zero();
};

/// Rotates and rescales the output operators of a device embedded in a
/// medium, where K = TT^+ + AA^+ differs from I, so that the transformed
/// matrices satisfy T'T'^+ + A'A'^+ = I. Eigenvalues of K come out in
/// descending order.
inline RenormalizationResult renormalize(const Mat2 &t, const Mat2 &a) {
    const Mat2 k = t * t.adjoint() + a * a.adjoint();
    const auto eig = hermitian_eigen(k);
    if (eig.values(1) <= 1e-12)
        throw Error(ErrorCode::SingularCommutator,
                    "renormalize: commutator eigenvalue " + std::to_string(eig.values(1)));
    RenormalizationResult out;
    out.X = eig.vectors.adjoint();
    out.lambdas = {eig.values(0), eig.values(1)};
    Mat2 scale = Mat2::Zero();
    scale(0, 0) = 1.0 / std::sqrt(out.lambdas[0]);
    scale(1, 1) = 1.0 / std::sqrt(out.lambdas[1]);
    out.T_prime = scale * out.X * t;
    out.A_prime = scale * out.X * a;
    return out;
}

/// Lossy beam splitter with T = [[t, r], [-r*, t*]] and absorption
/// A = sqrt(I - TT^+) V, which satisfies the unitarity constraint by
/// construction.
inline DeviceMatrices make_lossy_bs(Complex t, Complex r, const Mat2 &v = Mat2::Identity(), double omega = 0.0) {
    const double weight = std::norm(t) + std::norm(r);
    if (weight > 1.0 + 1e-12)
        throw Error(ErrorCode::Superunitary, "make_lossy_bs: |t|^2 + |r|^2 = " + std::to_string(weight));
    if (!is_unitary(v, 1e-10)) throw Error(ErrorCode::NotUnitary, "make_lossy_bs: V not unitary");
    DeviceMatrices d;
    d.omega = omega;
    d.T << t, r, -std::conj(r), std::conj(t);
    Mat2 rest = (1.0 - std::min(weight, 1.0)) * Mat2::Identity();
    d.A = hermitian_sqrt(rest) * v;
    return d;
}

/// Completes an arbitrary contraction T (spectral norm <= 1) to a valid
/// device with A = sqrt(I - TT^+) V.
inline DeviceMatrices complete_device(const Mat2 &t, const Mat2 &v = Mat2::Identity(), double omega = 0.0) {
    if (!is_unitary(v, 1e-10)) throw Error(ErrorCode::NotUnitary, "complete_device: V not unitary");
    const Mat2 rest = Mat2::Identity() - t * t.adjoint();
    const auto eig = hermitian_eigen(rest);
    if (eig.values(1) < -1e-12)
        throw Error(ErrorCode::Superunitary, "complete_device: T has singular value above 1");
    DeviceMatrices d;
    d.omega = omega;
    d.T = t;
    d.A = hermitian_sqrt(rest, SqrtTolerances{1e-12, 1e-12}) * v;
    return d;
}

struct SpectrumBin {
    double omega = 0.0;
    double width = 0.0;
    DeviceMatrices matrices;
    // Present when the bin was rescaled on load.
    std::optional<RenormalizationResult> renormalization;
};

struct DeviceSpectrum {
    std::vector<SpectrumBin> bins;

    std::size_t size() const { return bins.size(); }

    /// Index of the bin whose midfrequency is closest to `omega`.
    std::size_t nearest(double omega) const {
        if (bins.empty()) throw Error(ErrorCode::ValidationError, "nearest: spectrum is empty");
        std::size_t best = 0;
        for (std::size_t i = 1; i < bins.size(); ++i)
            if (std::abs(bins[i].omega - omega) < std::abs(bins[best].omega - omega)) best = i;
        return best;
    }
};

}  // namespace fourport
