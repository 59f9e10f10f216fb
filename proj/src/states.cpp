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

#include "entmeas/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entmeas {

namespace {

double norm2(const Vec4& a) {
    double s = 0.0;
    for (const cplx& x : a) s += std::norm(x);
    return s;
}

}  // namespace

PureState::PureState(cplx a00, cplx a01, cplx a10, cplx a11) : amp_{a00, a01, a10, a11} {
    if (std::abs(norm2(amp_) - 1.0) > 1e-12)
        throw std::invalid_argument("PureState: amplitudes are not normalized within 1e-12");
}

PureState PureState::normalized(cplx a00, cplx a01, cplx a10, cplx a11) {
    const double n = std::sqrt(norm2(Vec4{a00, a01, a10, a11}));
    if (n <= 0.0) throw std::invalid_argument("PureState: zero vector");
    return PureState(a00 / n, a01 / n, a10 / n, a11 / n);
}

PureState PureState::canonical(double a) {
    if (a < 0.0 || a > 1.0) throw std::invalid_argument("PureState::canonical: weight outside [0,1]");
    return PureState(std::sqrt(a), 0.0, 0.0, std::sqrt(1.0 - a));
}

Mat2 PureState::amplitude_matrix() const {
    Mat2 m;
    m(0, 0) = amp_[0];
    m(0, 1) = amp_[1];
    m(1, 0) = amp_[2];
    m(1, 1) = amp_[3];
    return m;
}

Mat4 PureState::density() const { return outer(amp_, amp_); }

JointDensity::JointDensity(const Mat4& m) : m_(m) {
    if (!m.is_hermitian(1e-10)) throw std::invalid_argument("JointDensity: not Hermitian within 1e-10");
    if (std::abs(m.trace().real() - 1.0) > 1e-10 || std::abs(m.trace().imag()) > 1e-10)
        throw std::invalid_argument("JointDensity: trace differs from 1 beyond 1e-10");
    if (!m.is_psd(1e-10)) throw std::invalid_argument("JointDensity: not psd within 1e-10");
}

JointDensity::JointDensity(const PureState& psi) : m_(psi.density()) {}

ReducedState::ReducedState(const Mat2& m) : m_(m) {
    if (!m.is_hermitian(1e-10)) throw std::invalid_argument("ReducedState: not Hermitian within 1e-10");
    if (std::abs(m.trace().real() - 1.0) > 1e-10 || std::abs(m.trace().imag()) > 1e-10)
        throw std::invalid_argument("ReducedState: trace differs from 1 beyond 1e-10");
    if (!m.is_psd(1e-10)) throw std::invalid_argument("ReducedState: not psd within 1e-10");
}

SchmidtForm schmidt_decompose(const PureState& psi) {
    // SVD of the amplitude matrix A = W S V^dagger via the eigensystem of
    // A^dagger A; applying (U_B (x) U_A) maps A -> U_B A U_A^T, so
    // U_B = W^dagger and U_A = V^T give the diagonal Schmidt form with the
    // smaller coefficient first.
    const Mat2 a = psi.amplitude_matrix();
    const HermitianEig<2> eig = eig_hermitian(a.adjoint() * a);
    const double s0 = std::sqrt(std::clamp(eig.values[0], 0.0, 1.0));
    const Vec2 v0 = eig.vector(0);
    const Vec2 v1 = eig.vector(1);

    Vec2 w1 = matvec(a, v1);  // s1 >= 1/sqrt(2) for a normalized state
    {
        const double n = std::sqrt(std::norm(w1[0]) + std::norm(w1[1]));
        w1[0] /= n;
        w1[1] /= n;
    }
    // Small-coefficient left vector: phase-corrected complement of w1 (the
    // direct A v0 / s0 route is noise once s0 is near the rounding floor).
    Vec2 w0{-std::conj(w1[1]), std::conj(w1[0])};
    {
        const Vec2 av0 = matvec(a, v0);
        const cplx z = std::conj(w0[0]) * av0[0] + std::conj(w0[1]) * av0[1];
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
    Mat2 v;
    v(0, 0) = v0[0];
    v(1, 0) = v0[1];
    v(0, 1) = v1[0];
    v(1, 1) = v1[1];

    SchmidtForm f;
    f.schmidt_weight = std::min(s0 * s0, 0.5);
    f.bob_unitary = w.adjoint();
    f.alice_unitary = v.transpose();
    return f;
}

std::pair<PureState, SchmidtForm> canonicalize(const PureState& psi) {
    SchmidtForm f = schmidt_decompose(psi);
    return {PureState::canonical(f.schmidt_weight), f};
}

double entanglement_pure(const ReducedState& reduced) {
    const auto eig = eig_hermitian(reduced.matrix());
    return 2.0 * std::clamp(eig.values[0], 0.0, 0.5);
}

double entropy_of_entanglement(double lambda) {
    if (lambda < 0.0 || lambda > 1.0)
        throw std::invalid_argument("entropy_of_entanglement: lambda outside [0,1]");
    double h = 0.0;
    if (lambda > 0.0) h -= lambda * std::log2(lambda);
    if (lambda < 1.0) h -= (1.0 - lambda) * std::log2(1.0 - lambda);
    return h;
}

double concurrence_pure(const PureState& psi) {
    const Vec4& a = psi.amplitudes();
    return 2.0 * std::abs(a[0] * a[3] - a[1] * a[2]);
}

double concurrence_mixed(const JointDensity& rho) {
    // mu_k = decreasing sqrt-eigenvalues of rho * rho_tilde, computed from
    // the Hermitian form sqrt(rho) * rho_tilde * sqrt(rho).
    static const Mat4 yy = [] {
        Mat2 sy;
        sy(0, 1) = cplx(0.0, -1.0);
        sy(1, 0) = cplx(0.0, 1.0);
        return kron(sy, sy);
    }();

    const Mat4& m = rho.matrix();
    const HermitianEig<4> eig = eig_hermitian(m);

    // rank-1 input: the sqrt route would turn eigenvalue rounding into
    // O(sqrt(eps)) noise on the subdominant mu's, so use the pure formula
    if (eig.values[2] <= 1e-12) {
        const Vec4 v = eig.vector(3);
        return concurrence_pure(PureState::normalized(v[0], v[1], v[2], v[3]));
    }

    Mat4 sqrt_rho;
    for (int k = 0; k < 4; ++k) {
        const double s = std::sqrt(std::max(eig.values[k], 0.0));
        const Vec4 vk = eig.vector(k);
        sqrt_rho = sqrt_rho + outer(vk, vk) * s;
    }

    const Mat4 spun = yy * m.conjugate() * yy;
    const Mat4 r = sqrt_rho * spun * sqrt_rho;
    const HermitianEig<4> reig = eig_hermitian((r + r.adjoint()) * 0.5);
    std::array<double, 4> mu;
    for (int k = 0; k < 4; ++k) mu[k] = std::sqrt(std::max(reig.values[k], 0.0));
    std::sort(mu.begin(), mu.end(), std::greater<>());
    return std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]);
}

double eof_generalized(const JointDensity& rho) {
    const double c = concurrence_mixed(rho);
    return 1.0 - std::sqrt(std::max(0.0, 1.0 - c * c));
}

}  // namespace entmeas
