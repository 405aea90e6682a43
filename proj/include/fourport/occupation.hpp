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
#include <cmath>
#include <compare>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"

namespace fourport {

inline constexpr int kDefaultCap = 10;

/// Quanta in the modes (a1, a2, g1, g2).
struct Occupation4 {
    std::array<int, 4> n{};

    int total() const { return n[0] + n[1] + n[2] + n[3]; }
    int operator[](std::size_t i) const { return n[i]; }
    int &operator[](std::size_t i) { return n[i]; }
    bool field_only() const { return n[2] == 0 && n[3] == 0; }
    auto operator<=>(const Occupation4 &) const = default;
};

/// Quanta in the two light modes (k1, k2).
struct Occupation2 {
    std::array<int, 2> k{};

    int total() const { return k[0] + k[1]; }
    int operator[](std::size_t i) const { return k[i]; }
    auto operator<=>(const Occupation2 &) const = default;
};

inline void check_occupation(const Occupation4 &n, int cap) {
    for (int v : n.n)
        if (v < 0) throw Error(ErrorCode::CapExceeded, "negative occupation");
    if (n.total() > cap)
        throw Error(ErrorCode::CapExceeded,
                    "total quanta " + std::to_string(n.total()) + " exceeds cap " + std::to_string(cap));
}

inline double factorial(int n) {
    double out = 1.0;
    for (int i = 2; i <= n; ++i) out *= i;
    return out;
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double out = 1.0;
    for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return std::round(out);
}

/// All four-mode occupations with `total` quanta, lexicographic in (n1..n4).
inline std::vector<Occupation4> sector_states(int total) {
    std::vector<Occupation4> out;
    for (int a = 0; a <= total; ++a)
        for (int b = 0; a + b <= total; ++b)
            for (int c = 0; a + b + c <= total; ++c) out.push_back({{a, b, c, total - a - b - c}});
    return out;
}

/// Two-mode occupations with k1 + k2 <= max_total, lexicographic in (k1, k2).
inline std::vector<Occupation2> field_states(int max_total) {
    std::vector<Occupation2> out;
    for (int a = 0; a <= max_total; ++a)
        for (int b = 0; a + b <= max_total; ++b) out.push_back({{a, b}});
    return out;
}

template <std::size_t R, std::size_t C>
using Table = std::array<std::array<int, C>, R>;

/// Visits every non-negative integer R x C table with the given row and
/// column sums. Depth-first over cells in row-major order; the last entry of
/// each row and the whole last row are forced by the margins, and a branch
/// is cut as soon as a row's remainder cannot fit into the columns left.
template <std::size_t R, std::size_t C, typename Visit>
void for_each_contingency_table(const std::array<int, R> &rows, const std::array<int, C> &cols, Visit &&visit) {
    static_assert(R > 0 && C > 0);
    if (std::accumulate(rows.begin(), rows.end(), 0) != std::accumulate(cols.begin(), cols.end(), 0)) return;
    for (int v : rows)
        if (v < 0) return;
    for (int v : cols)
        if (v < 0) return;

    Table<R, C> table{};
    auto row_left = rows;
    auto col_left = cols;

    auto place = [&](auto &self, std::size_t cell) -> void {
        if (cell == R * C) {
            visit(static_cast<const Table<R, C> &>(table));
            return;
        }
        const std::size_t i = cell / C;
        const std::size_t j = cell % C;
        int lo = 0;
        int hi = std::min(row_left[i], col_left[j]);
        if (i == R - 1) {
            lo = hi = col_left[j];
            if (hi > row_left[i]) return;
        } else if (j == C - 1) {
            lo = hi = row_left[i];
            if (hi > col_left[j]) return;
        } else {
            int capacity = 0;
            for (std::size_t jj = j + 1; jj < C; ++jj) capacity += col_left[jj];
            lo = std::max(0, row_left[i] - capacity);
        }
        for (int v = lo; v <= hi; ++v) {
            table[i][j] = v;
            row_left[i] -= v;
            col_left[j] -= v;
            self(self, cell + 1);
            row_left[i] += v;
            col_left[j] += v;
        }
        table[i][j] = 0;
    };
    place(place, 0);
}

}  // namespace fourport
