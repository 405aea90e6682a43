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
 * @file oracle.hpp
 * @brief Brute-force reference for every closed formula in the library.
 *
 * The state-space unitary exp(-i sum Phi(mu, nu) alpha_mu^+ alpha_nu)
 * conserves the total number of quanta, so it is block diagonal over sectors
 * of fixed total N. Each block is built from ladder-operator matrix elements
 * on the occupation basis and exponentiated directly; Fock inputs therefore
 * carry no truncation error at all.
 */

#pragma once

#include <map>
#include <vector>

#include "coherentmap.hpp"
#include "factorization.hpp"
#include "fockmap.hpp"

namespace fourport {

class SectorBasis {
   public:
    explicit SectorBasis(int total) : total_(total), states_(sector_states(total)) {
        for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], static_cast<Eigen::Index>(i));
    }

    int total() const { return total_; }
    Eigen::Index size() const { return static_cast<Eigen::Index>(states_.size()); }
    const std::vector<Occupation4> &states() const { return states_; }
    const Occupation4 &operator[](Eigen::Index i) const { return states_[static_cast<std::size_t>(i)]; }

    Eigen::Index index_of(const Occupation4 &n) const {
        auto it = index_.find(n);
        return it == index_.end() ? -1 : it->second;
    }

   private:
    int total_;
    std::vector<Occupation4> states_;
    std::map<Occupation4, Eigen::Index> index_;
};

/// Matrix of sum_{mu,nu} G(mu, nu) alpha_mu^+ alpha_nu on one sector, for any
/// complex 4x4 G.
inline MatX sector_operator(const Mat4 &g, const SectorBasis &basis) {
    MatX out = MatX::Zero(basis.size(), basis.size());
    for (Eigen::Index col = 0; col < basis.size(); ++col) {
        const Occupation4 &n = basis[col];
        for (int nu = 0; nu < 4; ++nu) {
            if (n[nu] == 0) continue;
            for (int mu = 0; mu < 4; ++mu) {
                if (g(mu, nu) == Complex{}) continue;
                Occupation4 m = n;
                m[nu] -= 1;
                m[mu] += 1;
                const double ladder = std::sqrt(static_cast<double>(n[nu])) * std::sqrt(static_cast<double>(m[mu]));
                out(basis.index_of(m), col) += g(mu, nu) * ladder;
            }
        }
    }
    return out;
}

inline void check_sector(int total, int cap) {
    if (total < 0 || total > cap)
        throw Error(ErrorCode::CapExceeded, "sector " + std::to_string(total) + " exceeds cap " + std::to_string(cap));
}

inline MatX sector_hamiltonian(const Mat4 &phi, int total, int cap = kDefaultCap) {
    check_sector(total, cap);
    if (!is_hermitian(phi, 1e-12)) throw Error(ErrorCode::NotHermitian, "sector_hamiltonian: Phi not Hermitian");
    const MatX h = sector_operator(phi, SectorBasis(total));
    return (h + h.adjoint()) * 0.5;
}

struct SectorUnitary {
    int total = 0;
    MatX U;
};

inline SectorUnitary sector_unitary(const Mat4 &phi, int total, int cap = kDefaultCap) {
    return {total, exp_minus_i(sector_hamiltonian(phi, total, cap))};
}

/// exp of the sector matrix of a general (non-Hermitian) quadratic generator.
inline MatX sector_exponential(const Mat4 &g, int total, int cap = kDefaultCap) {
    check_sector(total, cap);
    return expm(sector_operator(g, SectorBasis(total)));
}

inline Mat4 embed_generator(const Mat2 &g, int first, int second) {
    Mat4 out = Mat4::Zero();
    const int i = first - 1;
    const int j = second - 1;
    out(i, i) = g(0, 0);
    out(i, j) = g(0, 1);
    out(j, i) = g(1, 0);
    out(j, j) = g(1, 1);
    return out;
}

/// Product of per-block sector unitaries, each block's generator the
/// two-mode logarithm of its U padded with zeros.
inline MatX chain_sector_unitary(const FactorChain &chain, int total, int cap = kDefaultCap) {
    const SectorBasis basis(total);
    MatX out = MatX::Identity(basis.size(), basis.size());
    for (const auto &block : chain.blocks) {
        const Mat4 phi = embed_generator(unitary_log(block.U), block.modes[0], block.modes[1]);
        out = (out * sector_unitary(phi, total, cap).U).eval();
    }
    return out;
}

/// Product of the five elementary exponentials of a lossless factorization
/// on one sector (generators act on the two light modes).
inline MatX lossless_sector_product(const LosslessFactorization &f, int total, int cap = kDefaultCap) {
    const SectorBasis basis(total);
    MatX out = MatX::Identity(basis.size(), basis.size());
    for (const auto &factor : f.factors)
        out = (out * sector_exponential(embed_generator(factor.generator, 1, 2), total, cap)).eval();
    return out;
}

/// Reduced field density of an arbitrary four-mode state: the state is laid
/// out as a (field x device) coefficient matrix Psi and rho = Psi Psi^+.
inline FieldDensity partial_trace_device(const FockVector &state, int max_total) {
    FieldDensity rho(max_total);
    const FieldDensity device_index(max_total);
    MatX psi = MatX::Zero(static_cast<Eigen::Index>(rho.basis().size()),
                          static_cast<Eigen::Index>(device_index.basis().size()));
    for (const auto &[k, c] : state) {
        const auto f = rho.index(Occupation2{{k[0], k[1]}});
        const auto d = device_index.index(Occupation2{{k[2], k[3]}});
        if (f < 0 || d < 0) throw Error(ErrorCode::CapExceeded, "partial_trace_device: occupation beyond basis");
        psi(f, d) += c;
    }
    rho.matrix() = psi * psi.adjoint();
    return rho;
}

inline FieldDensity partial_trace_device(const FockAmplitudes &amps) {
    return partial_trace_device(amps.amps, amps.total);
}

inline constexpr double kConventionTolerance = 1e-10;

/// Sector unitaries of one embedding for every total up to `max_total`.
/// Construction verifies that the single-quantum sector reproduces Lambda
/// itself and throws ConventionError if it comes out transposed, adjoint or
/// otherwise different.
class FockOracle {
   public:
    FockOracle(const LambdaEmbedding &embedding, int max_total, int cap = kDefaultCap)
        : lambda_(embedding.Lambda) {
        check_sector(max_total, cap);
        sectors_.reserve(static_cast<std::size_t>(std::max(max_total, 1)) + 1);
        for (int n = 0; n <= std::max(max_total, 1); ++n) sectors_.push_back(sector_unitary(embedding.Phi, n, cap));
        pin_residual_ = single_quantum_residual();
        if (!(pin_residual_ <= kConventionTolerance)) {
            std::string hint;
            const Mat4 u1 = single_quantum_matrix();
            if (max_abs(u1 - lambda_.transpose()) <= kConventionTolerance) hint = " (matches Lambda^T)";
            if (max_abs(u1 - lambda_.adjoint()) <= kConventionTolerance) hint = " (matches Lambda^+)";
            throw Error(ErrorCode::ConventionError,
                        "single-quantum sector differs from Lambda by " + std::to_string(pin_residual_) + hint);
        }
    }

    int max_total() const { return static_cast<int>(sectors_.size()) - 1; }
    const SectorUnitary &sector(int total) const {
        if (total < 0 || total > max_total())
            throw Error(ErrorCode::CapExceeded, "oracle built up to sector " + std::to_string(max_total()));
        return sectors_[static_cast<std::size_t>(total)];
    }

    double pin_residual() const { return pin_residual_; }

    /// U_1 indexed by mode: entry (mu, nu) is <1_mu| U |1_nu>.
    Mat4 single_quantum_matrix() const {
        const SectorBasis basis(1);
        Mat4 out;
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                Occupation4 m{}, n{};
                m[mu] = 1;
                n[nu] = 1;
                out(mu, nu) = sectors_[1].U(basis.index_of(m), basis.index_of(n));
            }
        return out;
    }

    FockAmplitudes evolve(const Occupation4 &n) const {
        const SectorBasis basis(n.total());
        const auto &u = sector(n.total()).U;
        const Eigen::Index col = basis.index_of(n);
        FockAmplitudes out;
        out.total = n.total();
        for (Eigen::Index row = 0; row < basis.size(); ++row) {
            const Complex c = u(row, col);
            out.norm_squared += std::norm(c);
            if (std::abs(c) >= kDropAmplitude) out.amps.emplace(basis[row], c);
        }
        return out;
    }

    /// Evolves a superposition spanning several sectors.
    FockVector evolve(const FockVector &state) const {
        std::map<int, VecX> by_sector;
        for (const auto &[n, c] : state) {
            const int total = n.total();
            auto it = by_sector.find(total);
            if (it == by_sector.end())
                it = by_sector.emplace(total, VecX::Zero(SectorBasis(total).size())).first;
            it->second(SectorBasis(total).index_of(n)) += c;
        }
        FockVector out;
        for (const auto &[total, vec] : by_sector) {
            const SectorBasis basis(total);
            const VecX evolved = sector(total).U * vec;
            for (Eigen::Index i = 0; i < basis.size(); ++i)
                if (evolved(i) != Complex{}) out[basis[i]] += evolved(i);
        }
        return out;
    }

   private:
    double single_quantum_residual() const { return max_abs(single_quantum_matrix() - lambda_); }

    Mat4 lambda_;
    std::vector<SectorUnitary> sectors_;
    double pin_residual_ = 0.0;
};

inline FockAmplitudes evolve_fock(const LambdaEmbedding &embedding, const Occupation4 &n, int cap = kDefaultCap) {
    check_occupation(n, cap);
    return FockOracle(embedding, n.total(), cap).evolve(n);
}

/// Coherent state |gamma_1..gamma_4> expanded in Fock sectors up to `truncation`.
inline FockVector truncated_coherent_state(const CoherentVector &gamma, int truncation) {
    FockVector out;
    const double envelope = std::exp(-0.5 * gamma.norm_squared());
    for (int total = 0; total <= truncation; ++total)
        for (const auto &n : sector_states(total)) {
            Complex c{envelope, 0.0};
            for (int v = 0; v < 4; ++v) c *= std::pow(gamma[v], n[v]) / std::sqrt(factorial(n[v]));
            out.emplace(n, c);
        }
    return out;
}

struct CoherentCheck {
    CoherentVector predicted;
    double fidelity = 0.0;  // <lambda1; lambda2| rho_field |lambda1; lambda2>
    int truncation = 0;
};

/// Evolves the truncated coherent expansion sector by sector, traces out the
/// device and measures the overlap with the predicted coherent field state.
inline CoherentCheck coherent_fidelity(const FockOracle &oracle, const Mat4 &lambda, const CoherentVector &gamma) {
    const int truncation = oracle.max_total();
    CoherentCheck out;
    out.truncation = truncation;
    out.predicted = transform_coherent(lambda, gamma);
    FieldDensity rho = partial_trace_device(oracle.evolve(truncated_coherent_state(gamma, truncation)), truncation);
    rho.matrix() /= rho.trace();

    const Complex l1 = out.predicted[0];
    const Complex l2 = out.predicted[1];
    const double envelope = std::exp(-0.5 * (std::norm(l1) + std::norm(l2)));
    VecX target(static_cast<Eigen::Index>(rho.basis().size()));
    for (std::size_t i = 0; i < rho.basis().size(); ++i) {
        const auto &k = rho.basis()[i];
        target(static_cast<Eigen::Index>(i)) =
            envelope * std::pow(l1, k[0]) * std::pow(l2, k[1]) / std::sqrt(factorial(k[0]) * factorial(k[1]));
    }
    out.fidelity = (target.adjoint() * rho.matrix() * target)(0, 0).real();
    return out;
}

}  // namespace fourport
