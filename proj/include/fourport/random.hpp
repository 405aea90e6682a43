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

#include <random>

#include "device.hpp"

namespace fourport {

/// Seeded sampler of test devices. Every stream is reproducible from its seed.
class DeviceSampler {
   public:
    explicit DeviceSampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    Complex gaussian() {
        std::normal_distribution<double> n(0.0, 1.0);
        const double re = n(rng_);
        return {re, n(rng_)};
    }

    /// Haar-distributed 2x2 unitary (QR of a Ginibre matrix, phases fixed).
    Mat2 haar_unitary() {
        Mat2 g;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) g(i, j) = gaussian();
        Eigen::HouseholderQR<Mat2> qr(g);
        Mat2 q = qr.householderQ();
        const Mat2 r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int j = 0; j < 2; ++j) {
            const double mag = std::abs(r(j, j));
            if (mag > 0.0) q.col(j) *= r(j, j) / mag;
        }
        return q;
    }

    /// U diag(s1, s2) V with singular values drawn from [lo, hi] within [0, 1].
    Mat2 contraction(double lo = 0.0, double hi = 1.0) {
        Mat2 s = Mat2::Zero();
        s(0, 0) = uniform(lo, hi);
        s(1, 1) = uniform(lo, hi);
        return haar_unitary() * s * haar_unitary();
    }

    DeviceMatrices device(double lo = 0.0, double hi = 1.0) { return complete_device(contraction(lo, hi), haar_unitary()); }

    /// Mix of generic, nearly lossless, nearly opaque and rank-one devices.
    DeviceMatrices mixed_device(std::size_t i) {
        switch (i % 5) {
            case 1: return device(0.999, 1.0);
            case 2: return device(0.0, 1e-3);
            case 3: {
                Mat2 s = Mat2::Zero();
                s(0, 0) = uniform(0.2, 0.9);
                return complete_device(haar_unitary() * s * haar_unitary(), haar_unitary());
            }
            default: return device();
        }
    }

    /// Random Hermitian positive definite K with eigenvalues in [lo, hi].
    Mat2 positive_definite(double lo = 0.2, double hi = 3.0) {
        const Mat2 u = haar_unitary();
        Mat2 diag = Mat2::Zero();
        diag(0, 0) = uniform(lo, hi);
        diag(1, 1) = uniform(lo, hi);
        return u * diag * u.adjoint();
    }

    /// Device whose output commutator is K instead of I: the matrices of a
    /// valid device scaled by K^{1/2}, as produced by a surrounding medium.
    DeviceMatrices embedded_device() {
        DeviceMatrices d = device();
        const Mat2 root = hermitian_sqrt(positive_definite());
        d.T = root * d.T;
        d.A = root * d.A;
        return d;
    }

    std::mt19937_64 &engine() { return rng_; }

   private:
    std::mt19937_64 rng_;
};

}  // namespace fourport
