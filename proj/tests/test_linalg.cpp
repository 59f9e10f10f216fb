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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "entmeas/linalg.hpp"
#include "helpers.hpp"

using namespace entmeas;
using namespace test_helpers;

namespace {

template <int N>
double reconstruction_error(const Matrix<N>& h, const HermitianEig<N>& eig) {
    Matrix<N> rec;
    for (int k = 0; k < N; ++k) rec = rec + outer(eig.vector(k), eig.vector(k)) * eig.values[k];
    return max_abs_diff(rec, h);
}

}  // namespace

TEST_CASE("hermitian eigensystem: fixed cases") {
    {
        const auto eig = eig_hermitian(Mat2::identity());
        CHECK(eig.values[0] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(eig.values[1] == doctest::Approx(1.0).epsilon(1e-14));
    }
    {
        const auto eig = eig_hermitian(pauli_z());
        CHECK(eig.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(eig.values[1] == doctest::Approx(1.0).epsilon(1e-14));
    }
    {
        // the weighted-state difference matrix at the balanced reference
        // point is diag(-3/10, 3/10); the characteristic polynomial gives
        // the eigenvalues directly
        const auto eig = eig_hermitian(diag2(-0.3, 0.3));
        CHECK(std::abs(eig.values[0] + 0.3) <= 1e-14);
        CHECK(std::abs(eig.values[1] - 0.3) <= 1e-14);
    }
}

TEST_CASE("hermitian eigensystem rejects non-hermitian input") {
    Mat2 m;
    m(0, 1) = 1.0;  // strictly upper triangular
    CHECK_THROWS_AS((void)eig_hermitian(m), std::invalid_argument);
    Mat4 m4;
    m4(0, 3) = cplx(0.0, 2.0);
    CHECK_THROWS_AS((void)eig_hermitian(m4), std::invalid_argument);
}

TEST_CASE("hermitian eigensystem: reconstruction and orthonormality") {
    SplitMix64 rng(0xABCDEF01u);
    for (int trial = 0; trial < 1000; ++trial) {
        const Mat2 h2 = random_hermitian2(rng);
        const auto e2 = eig_hermitian(h2);
        const double scale2 = std::max(std::abs(e2.values[0]), std::abs(e2.values[1]));
        CHECK(reconstruction_error(h2, e2) <= 1e-12 * std::max(1.0, scale2));
        CHECK(max_abs_diff(e2.vectors.adjoint() * e2.vectors, Mat2::identity()) <= 1e-12);
        CHECK(e2.values[0] <= e2.values[1]);

        const Mat4 h4 = random_hermitian4(rng);
        const auto e4 = eig_hermitian(h4);
        const double scale4 = std::max(std::abs(e4.values[0]), std::abs(e4.values[3]));
        CHECK(reconstruction_error(h4, e4) <= 1e-12 * std::max(1.0, scale4));
        CHECK(max_abs_diff(e4.vectors.adjoint() * e4.vectors, Mat4::identity()) <= 1e-12);
        for (int k = 0; k + 1 < 4; ++k) CHECK(e4.values[k] <= e4.values[k + 1]);
    }
}

TEST_CASE("kron basis bookkeeping") {
    CHECK(max_abs_diff(kron(Mat2::identity(), Mat2::identity()), Mat4::identity()) == 0.0);

    const Mat4 k = kron(diag2(1.0, 0.0), diag2(0.0, 1.0));
    Mat4 expected;
    expected(1, 1) = 1.0;  // |bob=0, alice=1>
    CHECK(max_abs_diff(k, expected) == 0.0);

    // sigma_z on Bob, sigma_x on Alice maps |00> to |01>
    const Vec4 e00{1.0, 0.0, 0.0, 0.0};
    const Vec4 out = matvec(kron(pauli_z(), pauli_x()), e00);
    CHECK(std::abs(out[1] - 1.0) == 0.0);
    CHECK(std::abs(out[0]) + std::abs(out[2]) + std::abs(out[3]) == 0.0);
}

TEST_CASE("partial trace over Alice") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 1000; ++trial) {
        const Mat2 tau = random_matrix2(rng);
        const Mat2 sigma = random_matrix2(rng);
        const Mat2 reduced = partial_trace_alice(kron(tau, sigma));
        CHECK(max_abs_diff(reduced, tau * sigma.trace()) <= 1e-12);
    }

    // maximally entangled marginal
    const Vec4 bell{1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0)};
    CHECK(max_abs_diff(partial_trace_alice(outer(bell, bell)), Mat2::identity() * 0.5) <= 1e-15);

    // unnormalized post-measurement operator (2|00> + |11>)/sqrt(10)
    const Vec4 w{2.0 / std::sqrt(10.0), 0.0, 0.0, 1.0 / std::sqrt(10.0)};
    const Mat2 tau = partial_trace_alice(outer(w, w));
    CHECK(max_abs_diff(tau, diag2(0.4, 0.1)) <= 1e-15);
}

TEST_CASE("polar decomposition: fixed points") {
    SplitMix64 rng(7);
    {
        const Mat2 u = random_unitary2(rng);
        const PolarFactors f = polar_decompose(u);
        CHECK(max_abs_diff(f.psd_part, Mat2::identity()) <= 1e-12);
        CHECK(max_abs_diff(f.unitary_part, u) <= 1e-12);
    }
    {
        Mat2 psd = diag2(0.8, 0.1);
        psd(0, 1) = cplx(0.05, 0.02);
        psd(1, 0) = cplx(0.05, -0.02);
        const PolarFactors f = polar_decompose(psd);
        CHECK(max_abs_diff(f.psd_part, psd) <= 1e-12);
        CHECK(max_abs_diff(f.unitary_part, Mat2::identity()) <= 1e-12);
    }
}

TEST_CASE("polar decomposition: random and singular") {
    SplitMix64 rng(8);
    for (int trial = 0; trial < 1000; ++trial) {
        const Mat2 m = random_matrix2(rng);
        const PolarFactors f = polar_decompose(m);
        CHECK(f.psd_part.is_psd(1e-12));
        CHECK(f.unitary_part.is_unitary(1e-12));
        CHECK(max_abs_diff(f.psd_part * f.unitary_part, m) <= 1e-12 * std::max(1.0, m.max_abs()));
    }

    // rank deficient: the unitary is completed on the null space
    Mat2 rank1;
    rank1(0, 0) = cplx(0.3, 0.4);
    rank1(0, 1) = cplx(-0.1, 0.2);
    const PolarFactors f = polar_decompose(rank1);
    CHECK(f.unitary_part.is_unitary(1e-12));
    CHECK(max_abs_diff(f.psd_part * f.unitary_part, rank1) <= 1e-13);

    const PolarFactors z = polar_decompose(Mat2::zero());
    CHECK(z.unitary_part.is_unitary(1e-14));
    CHECK(z.psd_part.max_abs() == 0.0);
}

TEST_CASE("trace norm") {
    CHECK(trace_norm(diag2(-0.3, 0.3)) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(trace_norm(Mat2::zero()) == 0.0);

    Mat2 nh;
    nh(0, 1) = 1.0;
    CHECK_THROWS_AS((void)trace_norm(nh), std::invalid_argument);

    // unitary invariance
    SplitMix64 rng(9);
    for (int trial = 0; trial < 300; ++trial) {
        const Mat2 h = random_hermitian2(rng);
        const Mat2 w = random_unitary2(rng);
        CHECK(trace_norm(h) == doctest::Approx(trace_norm(w * h * w.adjoint())).epsilon(1e-12));
    }
}

TEST_CASE("psd and unitary predicates") {
    CHECK(Mat2::identity().is_psd(1e-12));
    CHECK(!diag2(1.0, -0.5).is_psd(1e-10));
    CHECK(pauli_x().is_hermitian(0.0));
    SplitMix64 rng(10);
    CHECK(random_unitary2(rng).is_unitary(1e-13));
}
