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
using fp::Mat2;
using fp::Mat4;
using fp::MatX;
using fp::Occupation4;

namespace {

const double kH = 1.0 / std::sqrt(2.0);

double amplitude_gap(const fp::FockAmplitudes &a, const fp::FockAmplitudes &b) {
    double worst = 0.0;
    for (const auto &[k, c] : a.amps) worst = std::max(worst, std::abs(c - b.at(k)));
    for (const auto &[k, c] : b.amps) worst = std::max(worst, std::abs(c - a.at(k)));
    return worst;
}

}  // namespace

TEST(SectorBasis, SizeAndLookup) {
    for (int n = 0; n <= 6; ++n) {
        const fp::SectorBasis b(n);
        EXPECT_EQ(b.size(), static_cast<Eigen::Index>(fp::binomial(n + 3, 3)));
        for (Eigen::Index i = 0; i < b.size(); ++i) EXPECT_EQ(b.index_of(b[i]), i);
    }
    EXPECT_EQ(fp::SectorBasis(2).index_of({{1, 0, 0, 0}}), -1);
}

TEST(SectorHamiltonian, TrivialCases) {
    EXPECT_LE(fp::max_abs(fp::sector_hamiltonian(Mat4::Zero(), 3)), 0.0);
    const MatX vac = fp::sector_hamiltonian(fp::Mat4::Identity(), 0);
    EXPECT_EQ(vac.rows(), 1);
    EXPECT_EQ(vac(0, 0), Complex{});

    Mat4 number = Mat4::Zero();
    for (int i = 0; i < 4; ++i) number(i, i) = i + 1.0;
    const fp::SectorBasis basis(1);
    const MatX h1 = fp::sector_hamiltonian(number, 1);
    for (int mu = 0; mu < 4; ++mu) {
        Occupation4 n{};
        n[mu] = 1;
        const auto i = basis.index_of(n);
        EXPECT_NEAR(std::abs(h1(i, i) - Complex(mu + 1.0)), 0.0, 1e-14);
    }
    EXPECT_LE(fp::max_abs(MatX(h1 - MatX(h1.diagonal().asDiagonal()))), 1e-15);
}

TEST(SectorHamiltonian, NumberOperatorIsDiagonalInEverySector) {
    Mat4 number = Mat4::Zero();
    for (int i = 0; i < 4; ++i) number(i, i) = i + 1.0;
    const fp::SectorBasis basis(4);
    const MatX h = fp::sector_hamiltonian(number, 4);
    for (Eigen::Index i = 0; i < basis.size(); ++i) {
        double expected = 0.0;
        for (int mu = 0; mu < 4; ++mu) expected += (mu + 1.0) * basis[i][mu];
        EXPECT_NEAR(std::abs(h(i, i) - Complex(expected)), 0.0, 1e-13);
    }
}

TEST(SectorHamiltonian, Errors) {
    EXPECT_THROW(fp::sector_hamiltonian(Mat4::Zero(), 11), fp::Error);
    Mat4 bad = Mat4::Zero();
    bad(0, 1) = 1.0;
    EXPECT_THROW(fp::sector_hamiltonian(bad, 2), fp::Error);
}

TEST(SectorUnitary, IdentityAndUnitarity) {
    EXPECT_LE(fp::reference::diff(fp::sector_unitary(Mat4::Zero(), 3).U, MatX::Identity(20, 20)), 0.0);
    fp::DeviceSampler s(81);
    for (std::size_t trial = 0; trial < 5; ++trial) {
        const auto e = fp::embed(s.mixed_device(trial));
        for (int n = 0; n <= 6; ++n) {
            const MatX u = fp::sector_unitary(e.Phi, n).U;
            EXPECT_TRUE(fp::is_unitary(u, 1e-10)) << "sector " << n;
            const MatX ref = fp::reference::exp_minus_i_spectral(fp::sector_hamiltonian(e.Phi, n));
            EXPECT_LE(fp::reference::diff(u, ref), 1e-10);
        }
    }
}

TEST(FockOracle, SingleQuantumSectorIsLambda) {
    fp::DeviceSampler s(82);
    for (std::size_t trial = 0; trial < 30; ++trial) {
        const auto e = fp::embed(s.mixed_device(trial));
        const fp::FockOracle oracle(e, 1);
        EXPECT_LE(oracle.pin_residual(), 1e-10);
        EXPECT_LE(fp::reference::diff(oracle.single_quantum_matrix(), e.Lambda), 1e-10);
    }
}

TEST(FockOracle, ConventionErrorOnFlippedGenerator) {
    fp::DeviceSampler s(83);
    auto e = fp::embed(s.device());
    e.Phi = e.Phi.transpose().eval();
    try {
        fp::FockOracle oracle(e, 1);
        FAIL();
    } catch (const fp::Error &err) {
        EXPECT_EQ(err.code(), fp::ErrorCode::ConventionError);
        EXPECT_NE(std::string(err.what()).find("Lambda^T"), std::string::npos) << err.what();
    }
}

TEST(EvolveFock, Examples) {
    const auto bal = fp::embed({0.0, kH * Mat2::Identity(), kH * Mat2::Identity()});
    const auto vac = fp::evolve_fock(bal, Occupation4{});
    EXPECT_NEAR(std::abs(vac.at(Occupation4{}) - 1.0), 0.0, 1e-15);

    const auto one = fp::evolve_fock(bal, {{1, 0, 0, 0}});
    EXPECT_NEAR(std::abs(one.at({{1, 0, 0, 0}}) - kH), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(one.at({{0, 0, 1, 0}}) + kH), 0.0, 1e-12);
    EXPECT_LE(std::abs(one.at({{0, 1, 0, 0}})), 1e-12);

    Mat2 t;
    t << kH, kH, -kH, kH;
    const auto hom = fp::embed({0.0, t, Mat2::Zero()});
    EXPECT_LE(amplitude_gap(fp::evolve_fock(hom, {{1, 1, 0, 0}}), fp::output_amplitudes(hom, {{1, 1, 0, 0}})), 1e-9);
}

TEST(EvolveFock, MatchesClosedFormAmplitudes) {
    fp::DeviceSampler s(84);
    for (std::size_t trial = 0; trial < 4; ++trial) {
        const auto e = fp::embed(s.mixed_device(trial));
        const fp::FockOracle oracle(e, 4);
        for (int total = 0; total <= 4; ++total)
            for (const auto &n : fp::sector_states(total)) {
                const auto closed = fp::output_amplitudes(e, n);
                const auto brute = oracle.evolve(n);
                EXPECT_LE(amplitude_gap(closed, brute), 1e-9);
                EXPECT_LE(fp::max_abs_difference(fp::partial_trace_device(brute), fp::output_density(e, n)), 1e-9);
            }
    }
}

TEST(PartialTraceDevice, Examples) {
    fp::FockAmplitudes pure;
    pure.total = 2;
    pure.amps = {{{{2, 0, 0, 0}}, kH}, {{{0, 2, 0, 0}}, -kH}};
    EXPECT_NEAR(fp::partial_trace_device(pure).purity(), 1.0, 1e-15);

    const auto bal = fp::embed({0.0, kH * Mat2::Identity(), kH * Mat2::Identity()});
    const auto rho = fp::partial_trace_device(fp::evolve_fock(bal, {{1, 0, 0, 0}}));
    EXPECT_NEAR(rho.at({{1, 0}}, {{1, 0}}).real(), 0.5, 1e-12);
    EXPECT_NEAR(rho.at({{0, 0}}, {{0, 0}}).real(), 0.5, 1e-12);
    EXPECT_LE(std::abs(rho.at({{1, 0}}, {{0, 0}})), 1e-12);

    fp::DeviceSampler s(85);
    fp::FockVector random;
    double norm = 0.0;
    for (const auto &k : fp::sector_states(3)) {
        random[k] = s.gaussian();
        norm += std::norm(random[k]);
    }
    for (auto &[k, c] : random) c /= std::sqrt(norm);
    const auto r = fp::partial_trace_device(random, 3);
    EXPECT_TRUE(r.is_valid(1e-10));
    EXPECT_LE(fp::max_abs_difference(r, fp::reduce_to_field(random, 3)), 1e-14);
}

TEST(ChainSectorUnitary, MatchesLambdaSector) {
    fp::DeviceSampler s(86);
    for (std::size_t trial = 0; trial < 4; ++trial) {
        const auto d = s.mixed_device(trial);
        const auto eight = fp::factor_eight(d);
        const auto five = fp::factor_five(d);
        const auto e = fp::embed(d);
        const auto e_five = fp::embed(d, five.device_gauge);
        for (int n = 0; n <= 4; ++n) {
            EXPECT_LE(fp::reference::diff(fp::chain_sector_unitary(eight, n), fp::sector_unitary(e.Phi, n).U), 1e-8);
            EXPECT_LE(fp::reference::diff(fp::chain_sector_unitary(five, n), fp::sector_unitary(e_five.Phi, n).U),
                      1e-8);
        }
    }
}

TEST(LosslessSectorProduct, MatchesGeneratorExponential) {
    fp::DeviceSampler s(87);
    std::vector<Mat2> cases;
    Mat2 half;
    half << kH, fp::kI * kH, fp::kI * kH, kH;
    cases.push_back(half);
    for (int i = 0; i < 5; ++i) cases.push_back(s.haar_unitary());
    for (const Mat2 &t : cases) {
        const auto f = fp::factor_lossless(t);
        const Mat4 phi = fp::block_diag(fp::lossless_generator(t).V, Mat2::Zero());
        for (int n = 0; n <= 4; ++n)
            EXPECT_LE(fp::reference::diff(fp::lossless_sector_product(f, n), fp::sector_unitary(phi, n).U), 1e-8);
    }
}

TEST(CoherentFidelity, TruncatedEvolution) {
    fp::DeviceSampler s(88);
    const auto e = fp::embed(s.device());
    const fp::FockOracle oracle(e, 8);
    fp::CoherentVector g;
    g.amplitudes << Complex(0.3, 0.1), Complex(-0.2, 0.25), Complex(0.1, 0.0), Complex(0.0, -0.15);
    const auto check = fp::coherent_fidelity(oracle, e.Lambda, g);
    EXPECT_GE(check.fidelity, 1.0 - 1e-6);
    EXPECT_LE(check.fidelity, 1.0 + 1e-10);
}
