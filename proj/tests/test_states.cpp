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

#include "entmeas/states.hpp"
#include "helpers.hpp"

using namespace entmeas;
using namespace test_helpers;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Vec4 apply_local(const SchmidtForm& f, const PureState& psi) {
    return matvec(kron(f.bob_unitary, f.alice_unitary), psi.amplitudes());
}

}  // namespace

TEST_CASE("pure state construction validates the norm") {
    CHECK_THROWS_AS(PureState(1.0, 1.0, 0.0, 0.0), std::invalid_argument);
    CHECK_NOTHROW(PureState(kInvSqrt2, 0.0, 0.0, kInvSqrt2));
    const PureState s = PureState::normalized(2.0, 0.0, 0.0, 1.0);
    CHECK(std::abs(s.amplitude(0) - 2.0 / std::sqrt(5.0)) <= 1e-15);
}

TEST_CASE("schmidt weight: product, maximal, and factorizable states") {
    CHECK(schmidt_decompose(PureState(1.0, 0.0, 0.0, 0.0)).schmidt_weight ==
          doctest::Approx(0.0).epsilon(1e-14));
    CHECK(schmidt_decompose(PureState(kInvSqrt2, 0.0, 0.0, kInvSqrt2)).schmidt_weight ==
          doctest::Approx(0.5).epsilon(1e-12));
    // (|00> + |01>)/sqrt(2) factors as |0> (x) (|0>+|1>)/sqrt(2)
    CHECK(schmidt_decompose(PureState(kInvSqrt2, kInvSqrt2, 0.0, 0.0)).schmidt_weight <= 1e-14);
}

TEST_CASE("canonicalize: fixed cases") {
    {
        const auto [canon, form] = canonicalize(PureState(0.0, kInvSqrt2, kInvSqrt2, 0.0));
        CHECK(form.schmidt_weight == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(std::abs(canon.amplitude(1)) == 0.0);
        CHECK(std::abs(canon.amplitude(2)) == 0.0);
    }
    {
        const auto [canon, form] = canonicalize(PureState(0.0, 0.0, 0.0, 1.0));
        CHECK(form.schmidt_weight <= 1e-14);
        CHECK(std::abs(canon.amplitude(3) - 1.0) <= 1e-14);
    }
}

TEST_CASE("canonicalize: random states reconstruct and preserve spectra") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const PureState psi = random_pure_state(rng);
        const auto [canon, form] = canonicalize(psi);

        CHECK(form.bob_unitary.is_unitary(1e-12));
        CHECK(form.alice_unitary.is_unitary(1e-12));
        CHECK(form.schmidt_weight >= 0.0);
        CHECK(form.schmidt_weight <= 0.5);

        const Vec4 rotated = apply_local(form, psi);
        double dev = 0.0;
        for (int i = 0; i < 4; ++i) dev = std::max(dev, std::abs(rotated[i] - canon.amplitude(i)));
        CHECK(dev <= 1e-10);

        // both marginals share the {a0, 1-a0} spectrum
        const Mat2 amp = psi.amplitude_matrix();
        const auto bob = eig_hermitian(amp * amp.adjoint());
        const auto alice = eig_hermitian(amp.adjoint() * amp);
        CHECK(std::abs(bob.values[0] - alice.values[0]) <= 1e-12);
        CHECK(std::abs(bob.values[0] - form.schmidt_weight) <= 1e-12);
    }
}

TEST_CASE("pure-state entanglement from a marginal") {
    CHECK(entanglement_pure(ReducedState(Mat2::identity() * 0.5)) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(entanglement_pure(ReducedState(diag2(1.0, 0.0))) == 0.0);
    CHECK(entanglement_pure(ReducedState(diag2(0.3, 0.7))) ==
          doctest::Approx(0.6).epsilon(1e-14));
}

TEST_CASE("entropy of entanglement") {
    CHECK(entropy_of_entanglement(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(entropy_of_entanglement(0.0) == 0.0);
    CHECK(entropy_of_entanglement(1.0) == 0.0);
    // -0.25*log2(0.25) - 0.75*log2(0.75)
    CHECK(entropy_of_entanglement(0.25) ==
          doctest::Approx(0.8112781244591328).epsilon(1e-15));
    CHECK_THROWS_AS((void)entropy_of_entanglement(-0.1), std::invalid_argument);
    CHECK_THROWS_AS((void)entropy_of_entanglement(1.1), std::invalid_argument);
}

TEST_CASE("pure concurrence") {
    CHECK(concurrence_pure(PureState(kInvSqrt2, 0.0, 0.0, kInvSqrt2)) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(concurrence_pure(PureState(1.0, 0.0, 0.0, 0.0)) == 0.0);
    // canonical weight 0.3: C = 2*sqrt(0.3*0.7)
    CHECK(concurrence_pure(PureState::canonical(0.3)) ==
          doctest::Approx(0.916515138991168).epsilon(1e-15));
}

TEST_CASE("mixed concurrence") {
    {
        Mat4 m;
        m(0, 0) = 0.5;
        m(3, 3) = 0.5;
        CHECK(concurrence_mixed(JointDensity(m)) == 0.0);
    }
    CHECK(concurrence_mixed(JointDensity(PureState(kInvSqrt2, 0.0, 0.0, kInvSqrt2))) ==
          doctest::Approx(1.0).epsilon(1e-12));

    SplitMix64 rng(12);
    for (int trial = 0; trial < 1000; ++trial) {
        const PureState psi = random_pure_state(rng);
        CHECK(std::abs(concurrence_mixed(JointDensity(psi)) - concurrence_pure(psi)) <= 1e-10);
    }
}

TEST_CASE("formation measure: closed form against decomposition bounds") {
    {
        Mat4 m;
        m(0, 0) = 0.5;
        m(3, 3) = 0.5;
        CHECK(eof_generalized(JointDensity(m)) == 0.0);
    }
    // pure canonical weight 0.3: agrees with 2*a
    CHECK(eof_generalized(JointDensity(PureState::canonical(0.3))) ==
          doctest::Approx(0.6).epsilon(1e-10));

    // the closed form never exceeds any sampled decomposition average
    SplitMix64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const JointDensity rho = random_density(rng, 2);
        const double closed = eof_generalized(rho);
        double best = 2.0;
        for (int d = 0; d < 200; ++d)
            best = std::min(best, random_decomposition_average(rho, rng));
        CHECK(closed <= best + 1e-8);
    }
}

TEST_CASE("local unitaries leave every measure unchanged") {
    SplitMix64 rng(14);
    for (int trial = 0; trial < 300; ++trial) {
        const PureState psi = random_pure_state(rng);
        const Mat4 local = kron(random_unitary2(rng), random_unitary2(rng));
        const Vec4 rotated = matvec(local, psi.amplitudes());
        const PureState chi(rotated[0], rotated[1], rotated[2], rotated[3]);

        CHECK(std::abs(concurrence_pure(psi) - concurrence_pure(chi)) <= 1e-10);
        CHECK(std::abs(eof_generalized(JointDensity(psi)) - eof_generalized(JointDensity(chi))) <=
              1e-10);
        const double e_psi = 2.0 * schmidt_decompose(psi).schmidt_weight;
        const double e_chi = 2.0 * schmidt_decompose(chi).schmidt_weight;
        CHECK(std::abs(e_psi - e_chi) <= 1e-10);
    }
}

TEST_CASE("pure states obey E = 1 - sqrt(1 - C^2)") {
    SplitMix64 rng(15);
    for (int trial = 0; trial < 1000; ++trial) {
        const PureState psi = random_pure_state(rng);
        const double c = concurrence_pure(psi);
        const double e = 2.0 * schmidt_decompose(psi).schmidt_weight;
        CHECK(std::abs(e - (1.0 - std::sqrt(std::max(0.0, 1.0 - c * c)))) <= 1e-10);
    }
}

TEST_CASE("density containers validate their input") {
    Mat4 bad;
    bad(0, 0) = 2.0;  // trace 2
    bad(1, 1) = -1.0;
    CHECK_THROWS_AS(JointDensity{bad}, std::invalid_argument);
    CHECK_THROWS_AS(ReducedState{diag2(1.5, -0.5)}, std::invalid_argument);
    CHECK_NOTHROW(ReducedState{diag2(0.25, 0.75)});
}
