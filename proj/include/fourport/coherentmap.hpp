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

#include "embedding.hpp"

namespace fourport {

/// Coherent amplitudes of the modes (a1, a2, g1, g2).
struct CoherentVector {
    Vec4 amplitudes = Vec4::Zero();

    Complex operator[](Eigen::Index i) const { return amplitudes(i); }
    double norm_squared() const { return amplitudes.squaredNorm(); }
    Vec2 field() const { return amplitudes.head<2>(); }
};

/// A coherent input stays coherent: lambda = Lambda gamma on all four modes.
/// The outgoing light is the pure state |lambda1; lambda2>, dropping the two
/// device components.
inline CoherentVector transform_coherent(const Mat4 &lambda, const CoherentVector &gamma) {
    CoherentVector out;
    for (int mu = 0; mu < 4; ++mu) {
        Complex sum{};
        for (int nu = 0; nu < 4; ++nu) sum += lambda(mu, nu) * gamma[nu];
        out.amplitudes(mu) = sum;
    }
    return out;
}

inline CoherentVector transform_coherent(const LambdaEmbedding &e, const CoherentVector &gamma) {
    return transform_coherent(e.Lambda, gamma);
}

}  // namespace fourport
