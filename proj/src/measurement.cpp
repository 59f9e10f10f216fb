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

#include "entmeas/measurement.hpp"

#include <cmath>
#include <stdexcept>

namespace entmeas {

namespace {

constexpr double kTwoPi = 6.283185307179586477;

void validate(double lambda, double b, double phi) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("PovmParams: strength must be >= 0");
    if (!(b >= 0.0 && b <= 0.5)) throw std::invalid_argument("PovmParams: skew must lie in [0, 1/2]");
    if (!(phi >= 0.0 && phi < kTwoPi)) throw std::invalid_argument("PovmParams: phase must lie in [0, 2pi)");
}

double normalization(double lambda) { return std::sqrt(1.0 + 2.0 * lambda * (1.0 + lambda)); }

// tau(b,b') = sum_a w[2b+a] conj(w[2b'+a]) for an unnormalized 4-vector.
Mat2 bob_operator_from_vector(const Vec4& w) {
    Mat2 t;
    for (int b = 0; b < 2; ++b)
        for (int bp = 0; bp < 2; ++bp)
            t(b, bp) = w[2 * b + 0] * std::conj(w[2 * bp + 0]) + w[2 * b + 1] * std::conj(w[2 * bp + 1]);
    return t;
}

void require_complete(const MeasurementPair& pair) {
    if (!pair.is_complete())
        throw std::invalid_argument("apply_measurement: pair is not complete within 1e-12");
}

}  // namespace

PovmParams PovmParams::from_theta(double strength, double theta, double phase) {
    if (!(theta >= 0.0 && theta <= 0.7853981633974483097))
        throw std::invalid_argument("PovmParams: theta must lie in [0, pi/4]");
    const double s = std::sin(theta);
    // sin(pi/4)^2 lands one ulp above 1/2
    PovmParams p(strength, std::min(s * s, 0.5), phase);
    validate(p.lambda_, p.b_, p.phi_);
    return p;
}

PovmParams PovmParams::from_b(double strength, double skew, double phase) {
    validate(strength, skew, phase);
    return PovmParams(strength, skew, phase);
}

double PovmParams::theta() const { return std::asin(std::sqrt(b_)); }

double MeasurementPair::completeness_residual() const {
    return max_abs_diff(m0.adjoint() * m0 + m1.adjoint() * m1, Mat2::identity());
}

MeasurementPair build_povm(const PovmParams& p) {
    const double lam = p.strength();
    const double b = p.skew();
    const double n = 1.0 / normalization(lam);
    const double sc = std::sqrt(b * (1.0 - b));
    const cplx off = std::polar(sc, p.phase());

    MeasurementPair pair;
    pair.m0(0, 0) = n * (lam + 1.0 - b);
    pair.m0(0, 1) = n * off;
    pair.m0(1, 0) = n * std::conj(off);
    pair.m0(1, 1) = n * (lam + b);

    pair.m1(0, 0) = n * (lam + b);
    pair.m1(0, 1) = -n * off;
    pair.m1(1, 0) = -n * std::conj(off);
    pair.m1(1, 1) = n * (lam + 1.0 - b);
    return pair;
}

double disturbance(double lambda) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("disturbance: lambda must be >= 0");
    return 1.0 / (1.0 + 2.0 * lambda * (1.0 + lambda));
}

double quality(double lambda) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("quality: lambda must be >= 0");
    return 2.0 * lambda * (1.0 + lambda) / (1.0 + 2.0 * lambda * (1.0 + lambda));
}

std::pair<Mat2, Mat2> weighted_bob_operators(const PureState& psi, const MeasurementPair& pair) {
    const Vec4& v = psi.amplitudes();
    std::pair<Mat2, Mat2> out;
    for (int i = 0; i < 2; ++i) {
        const Mat2& m = (i == 0) ? pair.m0 : pair.m1;
        Vec4 w;
        for (int b = 0; b < 2; ++b)
            for (int ap = 0; ap < 2; ++ap)
                w[2 * b + ap] = m(ap, 0) * v[2 * b + 0] + m(ap, 1) * v[2 * b + 1];
        (i == 0 ? out.first : out.second) = bob_operator_from_vector(w);
    }
    return out;
}

std::pair<Mat2, Mat2> weighted_bob_operators(const JointDensity& rho, const MeasurementPair& pair) {
    const Mat2 id = Mat2::identity();
    const Mat4 k0 = kron(id, pair.m0);
    const Mat4 k1 = kron(id, pair.m1);
    return {partial_trace_alice(k0 * rho.matrix() * k0.adjoint()),
            partial_trace_alice(k1 * rho.matrix() * k1.adjoint())};
}

namespace {

// Normalizing a low-weight outcome amplifies absolute rounding noise, so
// rounding-scale negative eigenvalues are clipped to zero before the state
// containers validate.
template <int N>
Matrix<N> normalize_state(const Matrix<N>& unnormalized, double weight) {
    Matrix<N> m = (unnormalized + unnormalized.adjoint()) * (0.5 / weight);
    const auto eig = eig_hermitian(m);
    if (eig.values[0] >= 0.0) return m;
    Matrix<N> repaired;
    double tr = 0.0;
    for (int k = 0; k < N; ++k) {
        const double v = std::max(eig.values[k], 0.0);
        if (v == 0.0) continue;
        repaired = repaired + outer(eig.vector(k), eig.vector(k)) * v;
        tr += v;
    }
    return repaired * (1.0 / tr);
}

OutcomeEnsemble ensemble_from_unnormalized(const Mat4& post0, const Mat4& post1) {
    OutcomeEnsemble out;
    out.prob0 = std::max(0.0, post0.trace().real());
    out.prob1 = std::max(0.0, post1.trace().real());
    if (out.prob0 >= kProbabilityFloor) {
        out.joint_post0.emplace(normalize_state(post0, out.prob0));
        out.bob_state0.emplace(normalize_state(partial_trace_alice(post0), out.prob0));
    }
    if (out.prob1 >= kProbabilityFloor) {
        out.joint_post1.emplace(normalize_state(post1, out.prob1));
        out.bob_state1.emplace(normalize_state(partial_trace_alice(post1), out.prob1));
    }
    return out;
}

}  // namespace

OutcomeEnsemble apply_measurement(const PureState& psi, const MeasurementPair& pair) {
    require_complete(pair);
    const Vec4& v = psi.amplitudes();
    Mat4 post[2];
    for (int i = 0; i < 2; ++i) {
        const Mat2& m = (i == 0) ? pair.m0 : pair.m1;
        Vec4 w;
        for (int b = 0; b < 2; ++b)
            for (int ap = 0; ap < 2; ++ap)
                w[2 * b + ap] = m(ap, 0) * v[2 * b + 0] + m(ap, 1) * v[2 * b + 1];
        post[i] = outer(w, w);
    }
    return ensemble_from_unnormalized(post[0], post[1]);
}

OutcomeEnsemble apply_measurement(const JointDensity& rho, const MeasurementPair& pair) {
    require_complete(pair);
    const Mat2 id = Mat2::identity();
    const Mat4 k0 = kron(id, pair.m0);
    const Mat4 k1 = kron(id, pair.m1);
    return ensemble_from_unnormalized(k0 * rho.matrix() * k0.adjoint(),
                                      k1 * rho.matrix() * k1.adjoint());
}

std::pair<double, double> outcome_probabilities_closed(double a, const PovmParams& p) {
    if (!(a >= 0.0 && a <= 0.5))
        throw std::invalid_argument("outcome_probabilities_closed: a must lie in [0, 1/2]");
    const double lam = p.strength();
    const double s = 1.0 + 2.0 * lam * (1.0 + lam);
    const double k = (-1.0 + 2.0 * a) * (1.0 + 2.0 * lam) * (1.0 - 2.0 * p.skew());
    return {(s + k) / (2.0 * s), (s - k) / (2.0 * s)};
}

std::pair<std::optional<ReducedState>, std::optional<ReducedState>> bob_states_closed(
    double a, const PovmParams& p) {
    if (!(a >= 0.0 && a <= 0.5))
        throw std::invalid_argument("bob_states_closed: a must lie in [0, 1/2]");
    const double lam = p.strength();
    const double b = p.skew();
    const double c2 = 1.0 - 2.0 * b;            // cos(2 theta)
    const double s2 = 2.0 * std::sqrt(b * (1.0 - b));  // sin(2 theta)
    const double s = 1.0 + 2.0 * lam * (1.0 + lam);
    const double w = (1.0 + 2.0 * lam);
    const double root = std::sqrt(a * (1.0 - a));
    const cplx off = std::polar(root * w * s2, -p.phase());
    const auto [p0, p1] = outcome_probabilities_closed(a, p);

    std::pair<std::optional<ReducedState>, std::optional<ReducedState>> out;
    if (p0 >= kProbabilityFloor) {
        const double den = s + (-1.0 + 2.0 * a) * w * c2;
        Mat2 r;
        r(0, 0) = 2.0 * a * (lam * lam + w * (1.0 - b)) / den;
        r(0, 1) = off / den;
        r(1, 0) = std::conj(off) / den;
        r(1, 1) = (-1.0 + a) * (-s + w * c2) / den;
        out.first.emplace(r);
    }
    if (p1 >= kProbabilityFloor) {
        const double den = -s + (-1.0 + 2.0 * a) * w * c2;
        Mat2 r;
        r(0, 0) = a * (-s + w * c2) / den;
        r(0, 1) = off / den;
        r(1, 0) = std::conj(off) / den;
        r(1, 1) = (-1.0 + a) * (s + w * c2) / den;
        out.second.emplace(r);
    }
    return out;
}

PointerModel pointer_model(double lambda) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("pointer_model: lambda must be >= 0");
    const double c = std::min(1.0, (lambda + 1.0) / normalization(lambda));
    PointerModel m;
    m.pointer_angle = std::acos(c);
    m.overlap = quality(lambda);
    m.spin_weight = 0.5;
    return m;
}

ReducedState von_neumann_nonselective(const ReducedState& rho, double lambda) {
    const double f = quality(lambda);
    Mat2 out = rho.matrix();
    out(0, 1) *= f;
    out(1, 0) *= f;
    return ReducedState(out);
}

PointerEquivalenceReport pointer_equivalence_check(double lambda, double theta, double phi) {
    const PovmParams p = PovmParams::from_theta(lambda, theta, phi);
    const PointerModel pm = pointer_model(lambda);
    const double az = std::cos(theta) * std::cos(theta);
    const cplx ph = std::polar(1.0, -phi);

    const Vec2 kplus{std::sqrt(az), std::sqrt(1.0 - az) * ph};
    const Vec2 kminus{-std::sqrt(1.0 - az), std::sqrt(az) * ph};
    const Mat2 pp = outer(kplus, kplus);
    const Mat2 pmn = outer(kminus, kminus);
    const double c = std::cos(pm.pointer_angle);
    const double s = std::sin(pm.pointer_angle);
    const Mat2 mplus = pp * c + pmn * s;
    const Mat2 mminus = pmn * c + pp * s;

    const MeasurementPair built = build_povm(p);
    PointerEquivalenceReport rep;
    rep.max_deviation = std::max(max_abs_diff(mplus, built.m0), max_abs_diff(mminus, built.m1));
    rep.pass = rep.max_deviation <= 1e-12;
    return rep;
}

Mat2 hermitize(const Mat2& m) {
    const PolarFactors f = polar_decompose(m);
    return f.unitary_part.adjoint() * f.psd_part * f.unitary_part;
}

}  // namespace entmeas
