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

#include "entmeas/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entmeas {

template <int N>
Matrix<N> Matrix<N>::identity() {
    Matrix m;
    for (int i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
}

template <int N>
Matrix<N> Matrix<N>::adjoint() const {
    Matrix m;
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) m(r, c) = std::conj((*this)(c, r));
    return m;
}

template <int N>
Matrix<N> Matrix<N>::conjugate() const {
    Matrix m;
    for (std::size_t i = 0; i < e.size(); ++i) m.e[i] = std::conj(e[i]);
    return m;
}

template <int N>
Matrix<N> Matrix<N>::transpose() const {
    Matrix m;
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) m(r, c) = (*this)(c, r);
    return m;
}

template <int N>
cplx Matrix<N>::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
}

template <int N>
Matrix<N> Matrix<N>::operator+(const Matrix& o) const {
    Matrix m;
    for (std::size_t i = 0; i < e.size(); ++i) m.e[i] = e[i] + o.e[i];
    return m;
}

template <int N>
Matrix<N> Matrix<N>::operator-(const Matrix& o) const {
    Matrix m;
    for (std::size_t i = 0; i < e.size(); ++i) m.e[i] = e[i] - o.e[i];
    return m;
}

template <int N>
Matrix<N> Matrix<N>::operator*(const Matrix& o) const {
    Matrix m;
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) {
            cplx s = 0.0;
            for (int k = 0; k < N; ++k) s += (*this)(r, k) * o(k, c);
            m(r, c) = s;
        }
    return m;
}

template <int N>
Matrix<N> Matrix<N>::operator*(cplx s) const {
    Matrix m;
    for (std::size_t i = 0; i < e.size(); ++i) m.e[i] = e[i] * s;
    return m;
}

template <int N>
Matrix<N> Matrix<N>::operator*(double s) const {
    return (*this) * cplx(s, 0.0);
}

template <int N>
double Matrix<N>::max_abs() const {
    double m = 0.0;
    for (const cplx& x : e) m = std::max(m, std::abs(x));
    return m;
}

template <int N>
bool Matrix<N>::is_hermitian(double tol) const {
    return max_abs_diff(*this, this->adjoint()) <= tol;
}

template <int N>
bool Matrix<N>::is_unitary(double tol) const {
    return max_abs_diff(this->adjoint() * (*this), Matrix::identity()) <= tol;
}

namespace {

template <int N>
std::array<cplx, static_cast<std::size_t>(N)> matvec_impl(
    const Matrix<N>& m, const std::array<cplx, static_cast<std::size_t>(N)>& v) {
    std::array<cplx, static_cast<std::size_t>(N)> out;
    for (int r = 0; r < N; ++r) {
        cplx s = 0.0;
        for (int c = 0; c < N; ++c) s += m(r, c) * v[static_cast<std::size_t>(c)];
        out[static_cast<std::size_t>(r)] = s;
    }
    return out;
}

template <int N>
Matrix<N> outer_impl(const std::array<cplx, static_cast<std::size_t>(N)>& u,
                     const std::array<cplx, static_cast<std::size_t>(N)>& v) {
    Matrix<N> m;
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c)
            m(r, c) = u[static_cast<std::size_t>(r)] * std::conj(v[static_cast<std::size_t>(c)]);
    return m;
}

}  // namespace

Vec2 matvec(const Mat2& m, const Vec2& v) { return matvec_impl<2>(m, v); }
Vec4 matvec(const Mat4& m, const Vec4& v) { return matvec_impl<4>(m, v); }
Mat2 outer(const Vec2& u, const Vec2& v) { return outer_impl<2>(u, v); }
Mat4 outer(const Vec4& u, const Vec4& v) { return outer_impl<4>(u, v); }

template <int N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.e.size(); ++i) m = std::max(m, std::abs(a.e[i] - b.e[i]));
    return m;
}

namespace {

template <int N>
void require_hermitian(const Matrix<N>& h, const char* who) {
    if (!h.is_hermitian(1e-10))
        throw std::invalid_argument(std::string(who) + ": input is not Hermitian within 1e-10");
}

// Force exact Hermitian symmetry before iterating.
template <int N>
Matrix<N> symmetrize(const Matrix<N>& h) {
    Matrix<N> a = (h + h.adjoint()) * 0.5;
    for (int i = 0; i < N; ++i) a(i, i) = cplx(a(i, i).real(), 0.0);
    return a;
}

// Normalized vector orthogonal to a 2-vector.
Vec2 orth_complement(const Vec2& v) {
    return Vec2{-std::conj(v[1]), std::conj(v[0])};
}

void normalize(Vec2& v) {
    const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
    v[0] /= n;
    v[1] /= n;
}

}  // namespace

HermitianEig<2> eig_hermitian(const Mat2& h) {
    require_hermitian(h, "eig_hermitian");
    const Mat2 a = symmetrize(h);
    const double p = a(0, 0).real();
    const double q = a(1, 1).real();
    const cplx beta = a(0, 1);
    const double mean = 0.5 * (p + q);
    const double d = 0.5 * (p - q);
    const double r = std::hypot(d, std::abs(beta));  // guarded discriminant

    HermitianEig<2> out;
    out.values = {mean - r, mean + r};

    const double scale = std::max({std::abs(p), std::abs(q), std::abs(beta), 1e-300});
    if (r <= 1e-18 * scale || std::abs(beta) <= 1e-18 * scale) {
        // (near-)diagonal: computational basis, ordered by diagonal value
        if (p <= q) {
            out.vectors = Mat2::identity();
        } else {
            out.vectors(0, 0) = 0.0;
            out.vectors(1, 0) = 1.0;
            out.vectors(0, 1) = 1.0;
            out.vectors(1, 1) = 0.0;
        }
        return out;
    }

    // eigenvector of the larger eigenvalue, picked to avoid cancellation
    Vec2 vhi;
    if (d >= 0.0)
        vhi = Vec2{cplx(r + d, 0.0), std::conj(beta)};
    else
        vhi = Vec2{beta, cplx(r - d, 0.0)};
    normalize(vhi);
    const Vec2 vlo = orth_complement(vhi);
    out.vectors(0, 0) = vlo[0];
    out.vectors(1, 0) = vlo[1];
    out.vectors(0, 1) = vhi[0];
    out.vectors(1, 1) = vhi[1];
    return out;
}

HermitianEig<4> eig_hermitian(const Mat4& h) {
    require_hermitian(h, "eig_hermitian");
    Mat4 a = symmetrize(h);
    Mat4 v = Mat4::identity();
    const double scale = std::max(a.max_abs(), 1e-300);

    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int r = 0; r < 4; ++r)
            for (int c = r + 1; c < 4; ++c) off = std::max(off, std::abs(a(r, c)));
        if (off <= 1e-14 * scale) break;

        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= 1e-18 * scale) continue;
                const cplx u = apq / mag;  // phase of the pivot
                const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // A <- R^dagger A R with R = identity except the (p,q) block
                // [[c, s], [-s*conj(u), c*conj(u)]]: the conjugate phase turns
                // the pivot real, the real rotation then zeroes it.
                const cplx uc = std::conj(u);
                for (int i = 0; i < 4; ++i) {
                    const cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * (uc * aiq);
                    a(i, q) = s * aip + c * (uc * aiq);
                }
                for (int j = 0; j < 4; ++j) {
                    const cplx apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj - s * (u * aqj);
                    a(q, j) = s * apj + c * (u * aqj);
                }
                for (int i = 0; i < 4; ++i) {
                    const cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * (uc * viq);
                    v(i, q) = s * vip + c * (uc * viq);
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);
            }
        }
    }

    std::array<int, 4> order = {0, 1, 2, 3};
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    HermitianEig<4> out;
    for (int k = 0; k < 4; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (int i = 0; i < 4; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

Mat4 kron(const Mat2& bob, const Mat2& alice) {
    Mat4 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    m(2 * i + k, 2 * j + l) = bob(i, j) * alice(k, l);
    return m;
}

Mat2 partial_trace_alice(const Mat4& rho) {
    Mat2 r;
    for (int b = 0; b < 2; ++b)
        for (int bp = 0; bp < 2; ++bp)
            r(b, bp) = rho(2 * b + 0, 2 * bp + 0) + rho(2 * b + 1, 2 * bp + 1);
    return r;
}

PolarFactors polar_decompose(const Mat2& m) {
    // Right factors from M^dagger M, left from applying M to them. The small
    // singular direction is taken as the phase-corrected complement of the
    // dominant one: M v0 / s0 loses all accuracy when s0 is tiny, while the
    // complement stays exactly orthonormal for any conditioning.
    const HermitianEig<2> eig = eig_hermitian(m.adjoint() * m);
    const double s0 = std::sqrt(std::max(eig.values[0], 0.0));
    const double s1 = std::sqrt(std::max(eig.values[1], 0.0));
    const Vec2 v0 = eig.vector(0);
    const Vec2 v1 = eig.vector(1);

    Vec2 w0, w1;
    if (s1 <= 1e-15 * std::max(1.0, m.max_abs())) {
        // M is (numerically) zero
        w0 = Vec2{1.0, 0.0};
        w1 = Vec2{0.0, 1.0};
    } else {
        w1 = matvec(m, v1);
        normalize(w1);
        w0 = orth_complement(w1);
        const Vec2 mv0 = matvec(m, v0);
        const cplx z = std::conj(w0[0]) * mv0[0] + std::conj(w0[1]) * mv0[1];
        if (std::abs(z) > 1e-300) {
            const cplx u = z / std::abs(z);
            w0[0] *= u;
            w0[1] *= u;
        }
    }

    Mat2 w;
    w(0, 0) = w0[0];
    w(1, 0) = w0[1];
    w(0, 1) = w1[0];
    w(1, 1) = w1[1];
    Mat2 vmat;
    vmat(0, 0) = v0[0];
    vmat(1, 0) = v0[1];
    vmat(0, 1) = v1[0];
    vmat(1, 1) = v1[1];
    Mat2 sigma;
    sigma(0, 0) = s0;
    sigma(1, 1) = s1;

    PolarFactors f;
    f.psd_part = symmetrize(w * sigma * w.adjoint());
    f.unitary_part = w * vmat.adjoint();
    return f;
}

double trace_norm(const Mat2& h) {
    require_hermitian(h, "trace_norm");
    const auto eig = eig_hermitian(h);
    return std::abs(eig.values[0]) + std::abs(eig.values[1]);
}

double trace_norm(const Mat4& h) {
    require_hermitian(h, "trace_norm");
    const auto eig = eig_hermitian(h);
    double s = 0.0;
    for (double v : eig.values) s += std::abs(v);
    return s;
}

template <int N>
bool Matrix<N>::is_psd(double tol) const {
    if (!is_hermitian(tol)) return false;
    const auto eig = eig_hermitian(symmetrize(*this));
    return eig.values[0] >= -tol;
}

template struct Matrix<2>;
template struct Matrix<4>;
template double max_abs_diff<2>(const Mat2&, const Mat2&);
template double max_abs_diff<4>(const Mat4&, const Mat4&);

}  // namespace entmeas
