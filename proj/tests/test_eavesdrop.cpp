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

#include "entmeas/eavesdrop.hpp"
#include "helpers.hpp"

using namespace entmeas;
using namespace test_helpers;

namespace {

const double kSqrt2 = std::sqrt(2.0);

JointDensity bell_pair() { return JointDensity(PureState::canonical(0.5)); }

JointDensity classical_mixture() {
    Mat4 m;
    m(0, 0) = 0.5;
    m(3, 3) = 0.5;
    return JointDensity(m);
}

// strength at which the exact statistic sits on the classical boundary:
// solves 2*lambda*(1+lambda)/(1+2*lambda*(1+lambda)) = sqrt(2)-1
const double kBoundaryLambda = 0.2768869870150187;

}  // namespace

TEST_CASE("exact correlation statistic") {
    CHECK(chsh_exact(bell_pair()) == doctest::Approx(2.0 * kSqrt2).epsilon(1e-14));
    CHECK(chsh_exact(classical_mixture()) == doctest::Approx(kSqrt2).epsilon(1e-14));
    CHECK(chsh_exact(JointDensity(PureState(1.0, 0.0, 0.0, 0.0))) ==
          doctest::Approx(kSqrt2).epsilon(1e-14));
}

TEST_CASE("intercept channel") {
    {
        // no interception: identity
        const JointDensity out = eve_channel(bell_pair(), PovmParams::from_theta(1.0, 0.2, 0.3), 0.0);
        CHECK(max_abs_diff(out.matrix(), bell_pair().matrix()) <= 1e-15);
    }
    {
        // full strong interception dephases to the classical mixture
        const JointDensity out = eve_channel(bell_pair(), PovmParams::from_theta(0.0, 0.0, 0.0), 1.0);
        CHECK(max_abs_diff(out.matrix(), classical_mixture().matrix()) <= 1e-15);
    }
    CHECK_THROWS_AS((void)eve_channel(bell_pair(), PovmParams::from_theta(0.0, 0.0, 0.0), 1.5),
                    std::invalid_argument);

    // aligned intercepts scale the statistic as sqrt(2) * (1 + F)
    for (double lam : {0.0, 0.1, kBoundaryLambda, 1.0, 5.0, 50.0}) {
        const JointDensity out = eve_channel(bell_pair(), PovmParams::from_theta(lam, 0.0, 0.0), 1.0);
        CHECK(std::abs(chsh_exact(out) - kSqrt2 * (1.0 + quality(lam))) <= 1e-10);
    }
    CHECK(std::abs(
              chsh_exact(eve_channel(bell_pair(), PovmParams::from_theta(kBoundaryLambda, 0.0, 0.0), 1.0)) -
              2.0) <= 1e-10);
}

TEST_CASE("protocol: clean channel keeps the violation") {
    ProtocolConfig cfg;
    cfg.n_pairs = 10000;
    cfg.rng_seed = 7;
    const ProtocolReport rep = run_protocol(cfg);
    CHECK(rep.test_pairs == 10000);
    CHECK(std::abs(rep.s_exact - 2.0 * kSqrt2) <= 1e-12);
    CHECK(std::abs(rep.s_estimate - 2.0 * kSqrt2) <= 0.1);
    CHECK(!rep.detection_verdict);
    CHECK(!rep.inconclusive);
}

TEST_CASE("protocol: strong interception is detected") {
    ProtocolConfig cfg;
    cfg.n_pairs = 10000;
    cfg.rng_seed = 7;
    cfg.eve_present = true;
    cfg.eve_lambda = 0.0;
    const ProtocolReport rep = run_protocol(cfg);
    CHECK(std::abs(rep.s_exact - kSqrt2) <= 1e-12);
    CHECK(std::abs(rep.s_estimate - kSqrt2) <= 0.1);
    CHECK(rep.detection_verdict);
    CHECK(rep.god_view_applicable);
    CHECK(rep.god_view_e_bar <= rep.god_view_bound + 1e-9);
}

TEST_CASE("protocol: weak interception hides below the threshold") {
    ProtocolConfig cfg;
    cfg.n_pairs = 10000;
    cfg.rng_seed = 11;
    cfg.eve_present = true;
    cfg.eve_lambda = 50.0;
    const ProtocolReport rep = run_protocol(cfg);
    CHECK(!rep.detection_verdict);
    CHECK(rep.god_view_e_bar <= rep.god_view_bound + 1e-9);
}

TEST_CASE("protocol: god view bound across strengths") {
    ProtocolConfig cfg;
    cfg.n_pairs = 100;
    cfg.eve_present = true;
    double prev_s = -10.0;
    for (double lam : {0.0, 0.05, 0.2, 0.5, 1.0, 2.0, 5.0, 20.0, 50.0}) {
        cfg.eve_lambda = lam;
        const ProtocolReport rep = run_protocol(cfg);
        CHECK(rep.god_view_e_bar <= rep.god_view_bound + 1e-9);
        CHECK(rep.s_exact >= prev_s - 1e-12);  // weaker measurement, higher S
        prev_s = rep.s_exact;
    }
}

TEST_CASE("protocol: reproducibility and parallel agreement") {
    ProtocolConfig cfg;
    cfg.n_pairs = 20000;
    cfg.sacrifice_fraction = 0.5;
    cfg.eve_present = true;
    cfg.eve_lambda = 0.8;
    cfg.rng_seed = 123456;

    const ProtocolReport r1 = run_protocol(cfg);
    const ProtocolReport r2 = run_protocol(cfg);
    const ProtocolReport r3 = run_protocol(cfg, /*parallel=*/false);
    CHECK(r1.test_pairs == 10000);
    CHECK(r1.s_estimate == r2.s_estimate);  // bitwise
    CHECK(r1.s_estimate == r3.s_estimate);
    for (int ai = 0; ai < 2; ++ai)
        for (int bi = 0; bi < 2; ++bi)
            for (int sa = 0; sa < 2; ++sa)
                for (int sb = 0; sb < 2; ++sb) {
                    CHECK(r1.counts[ai][bi][sa][sb] == r2.counts[ai][bi][sa][sb]);
                    CHECK(r1.counts[ai][bi][sa][sb] == r3.counts[ai][bi][sa][sb]);
                }
}

TEST_CASE("protocol: sparse runs are flagged inconclusive") {
    ProtocolConfig cfg;
    cfg.n_pairs = 20;
    cfg.rng_seed = 5;
    const ProtocolReport rep = run_protocol(cfg);
    CHECK(rep.inconclusive);

    ProtocolConfig bad = cfg;
    bad.n_pairs = 0;
    CHECK_THROWS_AS((void)run_protocol(bad), std::invalid_argument);
    bad = cfg;
    bad.sacrifice_fraction = 0.0;
    CHECK_THROWS_AS((void)run_protocol(bad), std::invalid_argument);
}

TEST_CASE("estimate concentrates around the exact value") {
    // Hoeffding-style envelope: 4*sqrt(ln(2/delta) / (2*n/4)), delta = 1e-3;
    // at most one excursion expected across 100 seeded runs
    const std::uint64_t n = 4000;
    const double envelope = 4.0 * std::sqrt(std::log(2.0 / 1e-3) / (2.0 * n / 4.0));
    ProtocolConfig cfg;
    cfg.n_pairs = n;
    cfg.eve_present = true;
    cfg.eve_lambda = 1.3;
    int excursions = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        cfg.rng_seed = seed;
        const ProtocolReport rep = run_protocol(cfg);
        if (std::abs(rep.s_estimate - rep.s_exact) > envelope) ++excursions;
    }
    CHECK(excursions <= 1);
}
