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
#include <complex>
#include <cstddef>

namespace entmeas {

using cplx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;

/// Dense complex matrix of fixed dimension (2 or 4), row-major.
/// Values are immutable in spirit: every operation returns a new matrix,
/// so instances are safe to share across threads.
template <int N>
struct Matrix {
    static_assert(N == 2 || N == 4);
    static constexpr int dim = N;

    std::array<cplx, static_cast<std::size_t>(N) * N> e{};

    cplx& operator()(int r, int c) { return e[static_cast<std::size_t>(r) * N + c]; }
    const cplx& operator()(int r, int c) const { return e[static_cast<std::size_t>(r) * N + c]; }

    static Matrix identity();
    static Matrix zero() { return Matrix{}; }

    Matrix adjoint() const;
    Matrix conjugate() const;
    Matrix transpose() const;
    cplx trace() const;

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator*(cplx s) const;
    Matrix operator*(double s) const;

    /// Largest entry magnitude (max norm).
    double max_abs() const;

    bool is_hermitian(double tol = kDefaultTol) const;
    bool is_unitary(double tol = kDefaultTol) const;
    /// Hermitian with all eigenvalues >= -tol.
    bool is_psd(double tol = kDefaultTol) const;
};

using Mat2 = Matrix<2>;
using Mat4 = Matrix<4>;

using Vec2 = std::array<cplx, 2>;
using Vec4 = std::array<cplx, 4>;

Vec2 matvec(const Mat2& m, const Vec2& v);
Vec4 matvec(const Mat4& m, const Vec4& v);

Mat2 outer(const Vec2& u, const Vec2& v);
Mat4 outer(const Vec4& u, const Vec4& v);

template <int N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b);

/// Eigensystem of a Hermitian matrix: ascending eigenvalues, orthonormal
/// eigenvectors stored as the columns of `vectors`.
template <int N>
struct HermitianEig {
    std::array<double, N> values;
    Matrix<N> vectors;

    std::array<cplx, N> vector(int k) const {
        std::array<cplx, N> v;
        for (int i = 0; i < N; ++i) v[i] = vectors(i, k);
        return v;
    }
};

/// 2x2 path uses the closed-form quadratic with a guarded discriminant;
/// 4x4 uses cyclic Jacobi iterated to ~1e-14 relative off-diagonal mass.
/// Rejects input that is not Hermitian within 1e-10.
HermitianEig<2> eig_hermitian(const Mat2& h);
HermitianEig<4> eig_hermitian(const Mat4& h);

/// Tensor product; the first factor is the Bob space, the second the Alice
/// space, so the joint basis index is 2*(bob bit) + (alice bit).
Mat4 kron(const Mat2& bob, const Mat2& alice);

/// Traces out the Alice (second) factor, returning Bob's 2x2 operator.
/// Linear; accepts unnormalized and non-positive input.
Mat2 partial_trace_alice(const Mat4& rho);

/// M = psd_part * unitary_part. For singular M the unitary is completed on
/// the null space; any completion reconstructs M exactly.
struct PolarFactors {
    Mat2 psd_part;
    Mat2 unitary_part;
};

PolarFactors polar_decompose(const Mat2& m);

/// Sum of absolute eigenvalues. Rejects non-Hermitian input.
double trace_norm(const Mat2& h);
double trace_norm(const Mat4& h);

}  // namespace entmeas
