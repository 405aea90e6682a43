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


#include <gtest/gtest.h>

#include "reference.hpp"

namespace fp = fourport;
using fp::Complex;
using fp::kI;
using fp::Mat2;
using fp::Mat4;
using fp::MatX;

namespace {

MatX random_matrix(fp::DeviceSampler &s, int n) {
    MatX m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = s.gaussian();
    return m;
}

Mat4 random_hermitian4(fp::DeviceSampler &s, double scale) {
    Mat4 m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = s.gaussian();
    return (m + m.adjoint()) * (0.5 * scale);
}

}  // namespace

TEST(HermitianEigen, DescendingWithPhaseFixedVectors) {
    Mat2 m;
    m << 2.0, kI, -kI, 2.0;
    const auto eig = fp::hermitian_eigen(m);
    EXPECT_NEAR(eig.values(0), 3.0, 1e-14);
    EXPECT_NEAR(eig.values(1), 1.0, 1e-14);
    for (int k = 0; k < 2; ++k) {
        EXPECT_NEAR(eig.vectors(0, k).imag(), 0.0, 1e-15);
        EXPECT_GT(eig.vectors(0, k).real(), 0.0);
    }
    EXPECT_LE(fp::reference::diff(eig.vectors * eig.values.cast<Complex>().asDiagonal() * eig.vectors.adjoint(), m),
              1e-13);
}

TEST(HermitianSqrt, KnownValue) {
    Mat2 m;
    m << 2.0, 1.0, 1.0, 2.0;
    const Mat2 r = fp::hermitian_sqrt(m);
    const double a = (std::sqrt(3.0) + 1.0) / 2.0;
    const double b = (std::sqrt(3.0) - 1.0) / 2.0;
    EXPECT_NEAR(r(0, 0).real(), a, 1e-14);
    EXPECT_NEAR(r(0, 1).real(), b, 1e-14);
    EXPECT_NEAR(r(1, 0).real(), b, 1e-14);
    EXPECT_NEAR(r(1, 1).real(), a, 1e-14);
    EXPECT_NEAR(r(0, 0).real(), 1.36603, 1e-5);
}

TEST(HermitianSqrt, ZeroAndIdentity) {
    EXPECT_EQ(fp::max_abs(fp::hermitian_sqrt(Mat2(Mat2::Zero()))), 0.0);
    EXPECT_LE(fp::reference::diff(fp::hermitian_sqrt(Mat2(Mat2::Identity())), Mat2::Identity()), 1e-15);
}

TEST(HermitianSqrt, MatchesSchurSqrtOnRandomPsd) {
    fp::DeviceSampler s(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Mat2 k = s.positive_definite(0.01, 4.0);
        const Mat2 r = fp::hermitian_sqrt(k);
        EXPECT_LE(fp::reference::diff(r * r, k), 1e-12);
        EXPECT_LE(fp::reference::diff(MatX(r), fp::reference::sqrt_schur(MatX(k))), 1e-10);
    }
}

TEST(HermitianSqrt, RejectsBadInput) {
    Mat2 neg;
    neg << -1.0, 0.0, 0.0, 1.0;
    try {
        fp::hermitian_sqrt(neg);
        FAIL();
    } catch (const fp::Error &e) {
        EXPECT_EQ(e.code(), fp::ErrorCode::NegativeEigenvalue);
    }
    Mat2 asym;
    asym << 1.0, 1.0, 0.0, 1.0;
    try {
        fp::hermitian_sqrt(asym);
        FAIL();
    } catch (const fp::Error &e) {
        EXPECT_EQ(e.code(), fp::ErrorCode::NotHermitian);
    }
}

TEST(HermitianSqrt, ClampsRoundingNoise) {
    Mat2 m = Mat2::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = -1e-13;
    const Mat2 r = fp::hermitian_sqrt(m);
    EXPECT_EQ(r(1, 1), Complex{});
}

TEST(Expm, MatchesPadeAndSpectral) {
    fp::DeviceSampler s(12);
    for (int trial = 0; trial < 20; ++trial) {
        const MatX a = random_matrix(s, 6) * 2.0;
        EXPECT_LE(fp::reference::diff(fp::expm(a), fp::reference::expm_pade(a)), 1e-9 * fp::max_abs(a.exp()));
        const Mat4 h = random_hermitian4(s, 3.0);
        EXPECT_LE(fp::reference::diff(MatX(fp::exp_minus_i(h)), fp::reference::exp_minus_i_spectral(MatX(h))), 1e-12);
    }
    EXPECT_LE(fp::reference::diff(fp::expm(Mat4(Mat4::Zero())), Mat4::Identity()), 0.0);
    EXPECT_EQ(fp::expm(MatX(0, 0)).size(), 0);
}

TEST(UnitaryLog, RoundTripAndSpectrumRange) {
    fp::DeviceSampler s(13);
    for (int trial = 0; trial < 100; ++trial) {
        const Mat4 u = fp::exp_minus_i(random_hermitian4(s, 2.0));
        const auto log = fp::unitary_log_checked(u);
        EXPECT_TRUE(fp::is_hermitian(log.generator, 1e-13));
        EXPECT_LE(fp::reference::diff(fp::exp_minus_i(log.generator), u), 1e-12);
        Eigen::SelfAdjointEigenSolver<Mat4> solver(log.generator);
        EXPECT_GT(solver.eigenvalues().minCoeff(), -std::numbers::pi);
        EXPECT_LE(solver.eigenvalues().maxCoeff(), std::numbers::pi + 1e-12);
    }
}

TEST(UnitaryLog, IdentityAndBranchCut) {
    EXPECT_LE(fp::max_abs(fp::unitary_log(Mat2(Mat2::Identity()))), 1e-15);
    const Mat2 minus = -Mat2::Identity();
    const auto log = fp::unitary_log_checked(minus);
    EXPECT_TRUE(log.near_branch_cut);
    EXPECT_LE(fp::reference::diff(log.generator, std::numbers::pi * Mat2::Identity()), 1e-12);
    Mat2 bad = Mat2::Identity() * 2.0;
    EXPECT_THROW(fp::unitary_log(bad), fp::Error);
}

TEST(PolarUnitary, RecoversFactorAndHandlesSingular) {
    fp::DeviceSampler s(14);
    const Mat2 t = s.contraction();
    const Mat2 q = fp::polar_unitary(t);
    EXPECT_TRUE(fp::is_unitary(q, 1e-13));
    EXPECT_LE(fp::reference::diff(fp::hermitian_sqrt(Mat2(t * t.adjoint())) * q, t), 1e-12);
    const Mat2 zero_q = fp::polar_unitary(Mat2(Mat2::Zero()));
    EXPECT_TRUE(fp::is_unitary(zero_q, 1e-13));
}

TEST(Permanent, KnownValues) {
    MatX ones = MatX::Ones(3, 3);
    EXPECT_NEAR(std::abs(fp::permanent(ones) - Complex(6.0)), 0.0, 1e-12);
    EXPECT_EQ(fp::permanent(MatX(0, 0)), Complex(1.0));
    MatX two(2, 2);
    two << 1.0, 2.0, 3.0, 4.0;
    EXPECT_NEAR(std::abs(fp::permanent(two) - Complex(10.0)), 0.0, 1e-12);
    EXPECT_LE(std::abs(fp::permanent(MatX(MatX::Identity(5, 5))) - Complex(1.0)), 1e-14);
}

TEST(Permanent, MatchesPermutationSum) {
    fp::DeviceSampler s(15);
    for (int n = 1; n <= 7; ++n) {
        const MatX m = random_matrix(s, n);
        const Complex ref = fp::reference::permanent(m);
        EXPECT_LE(std::abs(fp::permanent(m) - ref), 1e-10 * std::max(1.0, std::abs(ref))) << "n = " << n;
    }
}

TEST(Permanent, CapEnforced) {
    try {
        fp::permanent(MatX::Ones(13, 13));
        FAIL();
    } catch (const fp::Error &e) {
        EXPECT_EQ(e.code(), fp::ErrorCode::TooLarge);
    }
}
