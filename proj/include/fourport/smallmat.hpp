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
 * @file smallmat.hpp
 * @brief Complex linear algebra kernel for the 2x2 and 4x4 matrices of a
 * four-port device: Hermitian eigendecomposition, principal square root,
 * principal unitary logarithm, polar factors, matrix exponential and
 * permanents.
 *
 * Eigen supplies the storage and the raw eigen/SVD/Schur factorizations.
 * Everything built on top of them is templated on the Eigen matrix type so
 * fixed-size 2x2 and 4x4 instances stay on the stack.
 */

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"

namespace fourport {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix<Complex, 2, 2>;
using Mat4 = Eigen::Matrix<Complex, 4, 4>;
using Vec2 = Eigen::Matrix<Complex, 2, 1>;
using Vec4 = Eigen::Matrix<Complex, 4, 1>;
using MatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Largest entry modulus; the norm used for every tolerance in this library.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived> &m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_finite(const Eigen::MatrixBase<Derived> &m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived> &m, double tol) {
    return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived> &m, double tol) {
    using Plain = typename Derived::PlainObject;
    if (m.rows() != m.cols()) return false;
    const Plain id = Plain::Identity(m.rows(), m.cols());
    return max_abs(m * m.adjoint() - id) <= tol;
}

template <typename Derived>
typename Derived::PlainObject commutator(const Eigen::MatrixBase<Derived> &a,
                                         const Eigen::MatrixBase<Derived> &b) {
    return a * b - b * a;
}

/// Makes the first component with modulus above `tol` real and positive.
template <typename Derived>
void fix_phase(Eigen::MatrixBase<Derived> &v, double tol = 1e-12) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v(i));
        if (mag > tol) {
            v *= std::conj(v(i)) / mag;
            v(i) = Complex(std::abs(v(i)), 0.0);
            return;
        }
    }
}

template <typename M>
struct HermitianEigen {
    Eigen::Matrix<double, M::RowsAtCompileTime, 1> values;  // descending
    M vectors;                                             // columns, phase-fixed
};

/// Eigendecomposition of a Hermitian matrix, eigenvalues in descending order,
/// each eigenvector with its first nonzero component real positive.
/// Degenerate eigenspaces get whatever orthonormal basis the solver returns.
template <typename Derived>
HermitianEigen<typename Derived::PlainObject> hermitian_eigen(const Eigen::MatrixBase<Derived> &m) {
    using M = typename Derived::PlainObject;
    const M sym = (m + m.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<M> solver(sym);
    HermitianEigen<M> out;
    const Eigen::Index n = sym.rows();
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = solver.eigenvalues()(n - 1 - k);
        out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
        auto col = out.vectors.col(k);
        fix_phase(col);
    }
    return out;
}

struct SqrtTolerances {
    double hermitian = 1e-12;
    double negative = 1e-9;
};

/// Principal (positive-semidefinite) square root of a PSD Hermitian matrix.
/// Eigenvalues in [-1e-9, 0) are rounding noise and clamp to zero.
template <typename Derived>
typename Derived::PlainObject hermitian_sqrt(const Eigen::MatrixBase<Derived> &m,
                                             const SqrtTolerances &tol = {}) {
    using M = typename Derived::PlainObject;
    if (!is_hermitian(m, tol.hermitian * std::max(1.0, max_abs(m))))
        throw Error(ErrorCode::NotHermitian, "hermitian_sqrt: asymmetry " + std::to_string(max_abs(m - m.adjoint())));
    const auto eig = hermitian_eigen(m);
    auto roots = eig.values;
    for (Eigen::Index k = 0; k < roots.size(); ++k) {
        if (roots(k) < -tol.negative)
            throw Error(ErrorCode::NegativeEigenvalue, "hermitian_sqrt: eigenvalue " + std::to_string(roots(k)));
        roots(k) = std::sqrt(std::max(roots(k), 0.0));
    }
    M r = eig.vectors * roots.template cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    return (r + r.adjoint()) * 0.5;
}

/// Matrix exponential by scaling and squaring with a Taylor series summed to
/// machine precision. Works for any square complex matrix, fixed or dynamic.
template <typename Derived>
typename Derived::PlainObject expm(const Eigen::MatrixBase<Derived> &a) {
    using M = typename Derived::PlainObject;
    const Eigen::Index n = a.rows();
    const M id = M::Identity(n, n);
    if (n == 0) return id;
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const M x = a / std::ldexp(1.0, squarings);
    M result = id;
    M term = id;
    for (int k = 1; k < 60; ++k) {
        term = (term * x) / static_cast<double>(k);
        result += term;
        if (max_abs(term) <= 1e-18 * max_abs(result)) break;
    }
    for (int s = 0; s < squarings; ++s) result = (result * result).eval();
    return result;
}

/// exp(-i H), the convention relating every generator to its unitary.
template <typename Derived>
typename Derived::PlainObject exp_minus_i(const Eigen::MatrixBase<Derived> &h) {
    using M = typename Derived::PlainObject;
    const M scaled = h * Complex(0.0, -1.0);
    return expm(scaled);
}

template <typename M>
struct UnitaryLog {
    M generator;  // Hermitian H with exp(-iH) = U
    bool near_branch_cut = false;
};

inline constexpr double kBranchWarning = 1e-8;

/// Principal logarithm of a unitary: Hermitian H with exp(-iH) = U and
/// spectrum in (-pi, pi]. `near_branch_cut` flags an eigenphase within 1e-8
/// of pi, where H jumps under small perturbations of U.
template <typename Derived>
UnitaryLog<typename Derived::PlainObject> unitary_log_checked(const Eigen::MatrixBase<Derived> &u,
                                                              double tol = 1e-10) {
    using M = typename Derived::PlainObject;
    if (!is_finite(u) || !is_unitary(u, tol))
        throw Error(ErrorCode::NotUnitary, "unitary_log: input not unitary within tolerance");
    const M plain = u;
    Eigen::ComplexSchur<M> schur(plain);
    const M &q = schur.matrixU();
    const M &t = schur.matrixT();
    const Eigen::Index n = plain.rows();
    Eigen::Matrix<Complex, M::RowsAtCompileTime, 1> phases(n);
    UnitaryLog<M> out;
    for (Eigen::Index k = 0; k < n; ++k) {
        double h = -std::arg(t(k, k));
        if (h <= -std::numbers::pi) h = std::numbers::pi;
        if (std::numbers::pi - std::abs(h) < kBranchWarning) out.near_branch_cut = true;
        phases(k) = h;
    }
    M gen = q * phases.asDiagonal() * q.adjoint();
    out.generator = (gen + gen.adjoint()) * 0.5;
    return out;
}

template <typename Derived>
typename Derived::PlainObject unitary_log(const Eigen::MatrixBase<Derived> &u, double tol = 1e-10) {
    return unitary_log_checked(u, tol).generator;
}

template <typename M>
struct PolarDecomposition {
    M positive;  // sqrt(M M^+)
    M unitary;
};

/// Left polar decomposition M = P Q with P = sqrt(M M^+), both factors
/// taken from one SVD. P Q reproduces M to rounding even when M is singular.
template <typename Derived>
PolarDecomposition<typename Derived::PlainObject> polar_decomposition(const Eigen::MatrixBase<Derived> &m) {
    using M = typename Derived::PlainObject;
    const M plain = m;
    Eigen::JacobiSVD<M> svd(plain, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const M &u = svd.matrixU();
    PolarDecomposition<M> out;
    const M p = u * svd.singularValues().template cast<Complex>().asDiagonal() * u.adjoint();
    out.positive = (p + p.adjoint()) * 0.5;
    out.unitary = u * svd.matrixV().adjoint();
    return out;
}

/// Unitary factor Q of the left polar decomposition M = sqrt(M M^+) Q,
/// exactly unitary when M is singular.
template <typename Derived>
typename Derived::PlainObject polar_unitary(const Eigen::MatrixBase<Derived> &m) {
    return polar_decomposition(m).unitary;
}

inline constexpr int kDefaultPermanentCap = 12;

/// Permanent by Ryser's formula with Gray-code subset updates, O(2^n n).
inline Complex permanent(const MatX &m, int cap = kDefaultPermanentCap) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::TooLarge, "permanent: matrix not square");
    const int n = static_cast<int>(m.rows());
    if (n == 0) return {1.0, 0.0};
    if (n > cap) throw Error(ErrorCode::TooLarge, "permanent: dimension " + std::to_string(n) + " exceeds cap");
    if (n == 1) return m(0, 0);
    std::vector<Complex> row_sums(n, Complex{});
    Complex total{};
    std::uint64_t prev = 0;
    const std::uint64_t subsets = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < subsets; ++k) {
        const std::uint64_t gray = k ^ (k >> 1);
        const std::uint64_t flipped = gray ^ prev;
        const int col = std::countr_zero(flipped);
        const double sign = (gray & flipped) ? 1.0 : -1.0;
        for (int i = 0; i < n; ++i) row_sums[i] += sign * m(i, col);
        Complex prod{1.0, 0.0};
        for (int i = 0; i < n; ++i) prod *= row_sums[i];
        total += (std::popcount(gray) % 2 == 0) ? prod : -prod;
        prev = gray;
    }
    return (n % 2 == 0) ? total : -total;
}

template <typename Top, typename Right, typename Bottom, typename Corner>
Mat4 blocks(const Top &upper_left, const Right &upper_right, const Bottom &lower_left, const Corner &lower_right) {
    Mat4 out;
    out.topLeftCorner<2, 2>() = upper_left;
    out.topRightCorner<2, 2>() = upper_right;
    out.bottomLeftCorner<2, 2>() = lower_left;
    out.bottomRightCorner<2, 2>() = lower_right;
    return out;
}

inline Mat4 block_diag(const Mat2 &upper, const Mat2 &lower) {
    return blocks(upper, Mat2::Zero(), Mat2::Zero(), lower);
}

}  // namespace fourport
