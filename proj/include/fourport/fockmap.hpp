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
 * @file fockmap.hpp
 * @brief Closed-form transformation of four-mode Fock states.
 *
 * An input |n1, n2; n3, n4> leaves the device as
 *
 *   prod_nu (1/sqrt(n_nu!)) (sum_mu Lambda(mu, nu) alpha_mu^+)^{n_nu} |0>,
 *
 * whose coefficients are sums over contingency tables k(nu, mu) with row
 * sums n and column sums equal to the output occupation. Tracing out the
 * device modes gives the density matrix of the outgoing light, computed
 * either from those amplitudes or from the Z matrix of device commutators.
 */

#pragma once

#include <map>
#include <utility>
#include <vector>

#include "embedding.hpp"
#include "occupation.hpp"

namespace fourport {

inline constexpr double kDropAmplitude = 1e-15;

using FockVector = std::map<Occupation4, Complex>;

struct FockAmplitudes {
    int total = 0;
    FockVector amps;
    double norm_squared = 0.0;  // sum |C|^2 over all outputs, before dropping

    Complex at(const Occupation4 &k) const {
        auto it = amps.find(k);
        return it == amps.end() ? Complex{} : it->second;
    }
};

/// Density matrix of the two light modes on the basis of all (k1, k2) with
/// k1 + k2 <= max_total. rho(i, j) multiplies |basis[i]><basis[j]|.
class FieldDensity {
   public:
    FieldDensity() : FieldDensity(0) {}

    explicit FieldDensity(int max_total)
        : max_total_(max_total), basis_(field_states(max_total)),
          rho_(MatX::Zero(static_cast<Eigen::Index>(basis_.size()), static_cast<Eigen::Index>(basis_.size()))) {}

    int max_total() const { return max_total_; }
    const std::vector<Occupation2> &basis() const { return basis_; }
    const MatX &matrix() const { return rho_; }
    MatX &matrix() { return rho_; }

    /// Row index of (k1, k2), or -1 when outside the basis.
    Eigen::Index index(const Occupation2 &k) const {
        if (k[0] < 0 || k[1] < 0 || k.total() > max_total_) return -1;
        // Lexicographic block of k1 = a starts after all rows with smaller k1.
        Eigen::Index offset = 0;
        for (int a = 0; a < k[0]; ++a) offset += max_total_ - a + 1;
        return offset + k[1];
    }

    Complex at(const Occupation2 &row, const Occupation2 &col) const {
        const auto i = index(row);
        const auto j = index(col);
        return (i < 0 || j < 0) ? Complex{} : rho_(i, j);
    }

    double trace() const { return rho_.trace().real(); }
    double purity() const { return (rho_ * rho_).trace().real(); }
    double hermiticity_error() const { return max_abs(rho_ - rho_.adjoint()); }
    double min_eigenvalue() const {
        if (rho_.size() == 0) return 0.0;
        Eigen::SelfAdjointEigenSolver<MatX> solver((rho_ + rho_.adjoint()) * 0.5, Eigen::EigenvaluesOnly);
        return solver.eigenvalues().minCoeff();
    }

    bool is_valid(double tol = 1e-10) const {
        return hermiticity_error() <= 1e-12 && std::abs(trace() - 1.0) <= tol && min_eigenvalue() >= -tol;
    }

   private:
    int max_total_;
    std::vector<Occupation2> basis_;
    MatX rho_;
};

/// Largest entry difference between two densities, missing entries read as 0.
inline double max_abs_difference(const FieldDensity &a, const FieldDensity &b) {
    const FieldDensity &big = a.max_total() >= b.max_total() ? a : b;
    const FieldDensity &small = a.max_total() >= b.max_total() ? b : a;
    double worst = 0.0;
    for (const auto &r : big.basis())
        for (const auto &c : big.basis()) worst = std::max(worst, std::abs(big.at(r, c) - small.at(r, c)));
    return worst;
}

namespace detail {

/// (Lambda(mu, nu))^p / p! for every entry and 0 <= p <= max_power.
struct ScaledPowers {
    std::array<std::array<std::vector<Complex>, 4>, 4> table;

    ScaledPowers(const Mat4 &lambda, int max_power) {
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                auto &row = table[mu][nu];
                row.assign(max_power + 1, Complex{1.0, 0.0});
                for (int p = 1; p <= max_power; ++p) row[p] = row[p - 1] * lambda(mu, nu) / static_cast<double>(p);
            }
    }

    Complex operator()(int mu, int nu, int p) const { return table[mu][nu][p]; }
};

inline Complex amplitude(const ScaledPowers &powers, const Occupation4 &n, const Occupation4 &k) {
    Complex sum{};
    for_each_contingency_table<4, 4>(n.n, k.n, [&](const Table<4, 4> &t) {
        Complex term{1.0, 0.0};
        for (int nu = 0; nu < 4; ++nu)
            for (int mu = 0; mu < 4; ++mu)
                if (t[nu][mu] != 0) term *= powers(mu, nu, t[nu][mu]);
        sum += term;
    });
    double prefactor = 1.0;
    for (int v = 0; v < 4; ++v) prefactor *= std::sqrt(factorial(n[v]) * factorial(k[v]));
    return prefactor * sum;
}

}  // namespace detail

/// Output amplitudes C_k for the input occupation n, one contingency-table
/// sum per output occupation k with the same total.
inline FockAmplitudes output_amplitudes(const Mat4 &lambda, const Occupation4 &n, int cap = kDefaultCap) {
    check_occupation(n, cap);
    const detail::ScaledPowers powers(lambda, n.total());
    FockAmplitudes out;
    out.total = n.total();
    for (const auto &k : sector_states(n.total())) {
        const Complex c = detail::amplitude(powers, n, k);
        out.norm_squared += std::norm(c);
        if (std::abs(c) >= kDropAmplitude) out.amps.emplace(k, c);
    }
    return out;
}

inline FockAmplitudes output_amplitudes(const LambdaEmbedding &e, const Occupation4 &n, int cap = kDefaultCap) {
    return output_amplitudes(e.Lambda, n, cap);
}

/// Trace over the device modes of a pure four-mode state.
inline FieldDensity reduce_to_field(const FockVector &amps, int max_total) {
    FieldDensity rho(max_total);
    std::map<std::array<int, 2>, std::vector<std::pair<Eigen::Index, Complex>>> by_device;
    for (const auto &[k, c] : amps) {
        const auto row = rho.index(Occupation2{{k[0], k[1]}});
        if (row < 0) throw Error(ErrorCode::CapExceeded, "reduce_to_field: occupation outside field basis");
        by_device[{k[2], k[3]}].emplace_back(row, c);
    }
    auto &m = rho.matrix();
    for (const auto &[device, entries] : by_device)
        for (const auto &[i, ci] : entries)
            for (const auto &[j, cj] : entries) m(i, j) += ci * std::conj(cj);
    return rho;
}

/// Reduced density of the outgoing light for the Fock input n. With
/// `device_vacuum_required` the input must leave the device modes empty.
inline FieldDensity output_density(const Mat4 &lambda, const Occupation4 &n, bool device_vacuum_required = false,
                                   int cap = kDefaultCap) {
    if (device_vacuum_required && !n.field_only())
        throw Error(ErrorCode::DeviceExcited, "output_density: device modes must start in vacuum");
    const auto amps = output_amplitudes(lambda, n, cap);
    return reduce_to_field(amps.amps, n.total());
}

inline FieldDensity output_density(const LambdaEmbedding &e, const Occupation4 &n,
                                   bool device_vacuum_required = false, int cap = kDefaultCap) {
    return output_density(e.Lambda, n, device_vacuum_required, cap);
}

/// Z = [[I - T^+T, -T^+A], [-A^+T, I - A^+A]]: the commutators
/// [y_nu, y_mu^+] of the device parts y_nu^+ = sum_i Lambda(2+i, nu) g_i^+.
inline Mat4 z_matrix(const DeviceMatrices &d, double tol = kDefaultTolerance) {
    const auto e = embed(d, std::nullopt, tol);
    const Mat4 z = blocks(Mat2(Mat2::Identity() - d.T.adjoint() * d.T), Mat2(-d.T.adjoint() * d.A),
                          Mat2(-d.A.adjoint() * d.T), Mat2(Mat2::Identity() - d.A.adjoint() * d.A));
    const Mat4 gram = e.Lambda.bottomRows<2>().adjoint() * e.Lambda.bottomRows<2>();
    if (max_abs(z - gram) > 10 * tol)
        throw Error(ErrorCode::InvalidDevice, "z_matrix: device-row Gram matrix disagrees with Z");
    return z;
}

/// Same density as output_density, evaluated through device vacuum
/// expectation values: each <0| prod y^(n-q) prod y^+(n-p) |0> is the
/// permanent of Z with row nu repeated n_nu - q_nu times and column mu
/// repeated n_mu - p_mu times. These vanish when the two counts differ.
inline FieldDensity density_via_z(const Mat4 &lambda, const Occupation4 &n, int cap = kDefaultCap) {
    check_occupation(n, cap);
    if (!n.field_only())
        throw Error(ErrorCode::DeviceExcited, "density_via_z: device modes must start in vacuum");
    const Mat4 z = Mat4::Identity() - lambda.topRows<2>().adjoint() * lambda.topRows<2>();
    const int total = n.total();
    FieldDensity rho(total);

    struct Term {
        std::array<int, 4> q;
        double weight;  // prod C(n, q) / sqrt(n!)
        VecX field;     // prod x_nu^+^q_nu |0> on the field basis
    };
    std::vector<Term> terms;
    for (int q0 = 0; q0 <= n[0]; ++q0)
        for (int q1 = 0; q1 <= n[1]; ++q1) {
            Term term{{q0, q1, 0, 0}, 1.0, VecX::Zero(static_cast<Eigen::Index>(rho.basis().size()))};
            for (int v = 0; v < 4; ++v) term.weight *= binomial(n[v], term.q[v]) / std::sqrt(factorial(n[v]));
            // Polynomial in (a1^+, a2^+); coefficient j multiplies a1^+^j a2^+^(deg - j).
            std::vector<Complex> poly{Complex{1.0, 0.0}};
            for (int v = 0; v < 4; ++v)
                for (int rep = 0; rep < term.q[v]; ++rep) {
                    std::vector<Complex> next(poly.size() + 1, Complex{});
                    for (std::size_t j = 0; j < poly.size(); ++j) {
                        next[j + 1] += poly[j] * lambda(0, v);
                        next[j] += poly[j] * lambda(1, v);
                    }
                    poly = std::move(next);
                }
            const int degree = static_cast<int>(poly.size()) - 1;
            for (int j = 0; j <= degree; ++j) {
                const auto idx = rho.index(Occupation2{{j, degree - j}});
                term.field(idx) = poly[j] * std::sqrt(factorial(j) * factorial(degree - j));
            }
            terms.push_back(std::move(term));
        }

    auto &m = rho.matrix();
    for (const auto &p : terms)
        for (const auto &q : terms) {
            std::vector<int> row_modes, col_modes;
            for (int v = 0; v < 4; ++v) {
                row_modes.insert(row_modes.end(), n[v] - q.q[v], v);
                col_modes.insert(col_modes.end(), n[v] - p.q[v], v);
            }
            if (row_modes.size() != col_modes.size()) continue;
            MatX block(row_modes.size(), col_modes.size());
            for (std::size_t a = 0; a < row_modes.size(); ++a)
                for (std::size_t b = 0; b < col_modes.size(); ++b) block(a, b) = z(row_modes[a], col_modes[b]);
            const Complex y = p.weight * q.weight * permanent(block);
            if (y == Complex{}) continue;
            m += y * p.field * q.field.adjoint();
        }
    return rho;
}

inline FieldDensity density_via_z(const LambdaEmbedding &e, const Occupation4 &n, int cap = kDefaultCap) {
    return density_via_z(e.Lambda, n, cap);
}

struct PhotonStatistics {
    std::vector<double> mode1;  // P(k1)
    std::vector<double> mode2;  // P(k2)
    Eigen::MatrixXd joint;      // P(k1, k2)
};

inline PhotonStatistics photon_statistics(const FieldDensity &rho) {
    const int top = rho.max_total();
    PhotonStatistics out{std::vector<double>(top + 1, 0.0), std::vector<double>(top + 1, 0.0),
                         Eigen::MatrixXd::Zero(top + 1, top + 1)};
    for (const auto &k : rho.basis()) {
        const double p = rho.at(k, k).real();
        out.joint(k[0], k[1]) = p;
        out.mode1[k[0]] += p;
        out.mode2[k[1]] += p;
    }
    return out;
}

}  // namespace fourport
