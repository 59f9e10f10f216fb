// Copyright 2026 The entmeas authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "entmeas/linalg.hpp"
#include "entmeas/sampling.hpp"
#include "entmeas/states.hpp"

namespace test_helpers {

using namespace entmeas;

inline Mat2 pauli_x() {
    Mat2 m;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

inline Mat2 pauli_z() {
    Mat2 m;
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

inline Mat2 diag2(double a, double b) {
    Mat2 m;
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

inline Mat2 random_hermitian2(SplitMix64& rng) {
    Mat2 m;
    m(0, 0) = rng.gaussian();
    m(1, 1) = rng.gaussian();
    const cplx off(rng.gaussian(), rng.gaussian());
    m(0, 1) = off;
    m(1, 0) = std::conj(off);
    return m;
}

inline Mat4 random_hermitian4(SplitMix64& rng) {
    Mat4 m;
    for (int r = 0; r < 4; ++r) {
        m(r, r) = rng.gaussian();
        for (int c = r + 1; c < 4; ++c) {
            const cplx off(rng.gaussian(), rng.gaussian());
            m(r, c) = off;
            m(c, r) = std::conj(off);
        }
    }
    return m;
}

inline Mat2 random_matrix2(SplitMix64& rng) {
    Mat2 m;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) m(r, c) = cplx(rng.gaussian(), rng.gaussian());
    return m;
}

/// Gram-Schmidt on four Gaussian columns.
inline Mat4 random_unitary4(SplitMix64& rng) {
    std::array<Vec4, 4> cols;
    for (auto& col : cols)
        for (auto& x : col) x = cplx(rng.gaussian(), rng.gaussian());
    for (int k = 0; k < 4; ++k) {
        for (int j = 0; j < k; ++j) {
            cplx proj = 0.0;
            for (int i = 0; i < 4; ++i) proj += std::conj(cols[j][i]) * cols[k][i];
            for (int i = 0; i < 4; ++i) cols[k][i] -= proj * cols[j][i];
        }
        double n = 0.0;
        for (const cplx& x : cols[k]) n += std::norm(x);
        n = std::sqrt(n);
        for (cplx& x : cols[k]) x /= n;
    }
    Mat4 u;
    for (int c = 0; c < 4; ++c)
        for (int r = 0; r < 4; ++r) u(r, c) = cols[c][r];
    return u;
}

/// 2*lambda_min of either marginal of a normalized 4-vector.
inline double pure_entanglement(const Vec4& v) {
    Mat2 rb;
    for (int b = 0; b < 2; ++b)
        for (int bp = 0; bp < 2; ++bp)
            rb(b, bp) = v[2 * b + 0] * std::conj(v[2 * bp + 0]) + v[2 * b + 1] * std::conj(v[2 * bp + 1]);
    const auto eig = eig_hermitian(rb);
    return 2.0 * std::clamp(eig.values[0], 0.0, 0.5);
}

/// Average pure-state entanglement of one random m-term decomposition of
/// rho, built from its eigensystem and a Haar-ish m x m unitary. Serves as
/// an upper bound for the formation measure.
inline double random_decomposition_average(const JointDensity& rho, SplitMix64& rng) {
    const HermitianEig<4> eig = eig_hermitian(rho.matrix());
    std::vector<int> keep;
    for (int k = 0; k < 4; ++k)
        if (eig.values[k] > 1e-12) keep.push_back(k);
    const Mat4 t = random_unitary4(rng);

    double avg = 0.0;
    for (int j = 0; j < 4; ++j) {
        Vec4 member{};
        for (std::size_t c = 0; c < keep.size(); ++c) {
            const double w = std::sqrt(eig.values[keep[c]]);
            const Vec4 ev = eig.vector(keep[c]);
            for (int i = 0; i < 4; ++i) member[i] += t(j, static_cast<int>(c)) * w * ev[i];
        }
        double weight = 0.0;
        for (const cplx& x : member) weight += std::norm(x);
        if (weight < 1e-14) continue;
        const double inv = 1.0 / std::sqrt(weight);
        for (cplx& x : member) x *= inv;
        avg += weight * pure_entanglement(member);
    }
    return avg;
}

}  // namespace test_helpers
