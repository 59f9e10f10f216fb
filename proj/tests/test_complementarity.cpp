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

#include "entmeas/complementarity.hpp"
#include "helpers.hpp"

using namespace entmeas;
using namespace test_helpers;

namespace {

constexpr double kPi = 3.141592653589793238;

GridSpec small_grid() {
    GridSpec g;
    g.a_values = {0.0, 0.1, 0.25, 0.4, 0.5};
    g.b_values = {0.0, 0.2, 0.5};
    g.phi_values = {0.0, 1.7};
    g.lambda_values = {0.0, 0.3, 1.0, 5.0, 30.0};
    return g;
}

}  // namespace

TEST_CASE("conditional entanglement closed form") {
    {
        // a strong measurement leaves product conditional states
        const auto ce = conditional_entanglement_closed(0.37, PovmParams::from_theta(0.0, 0.0, 0.0));
        CHECK(ce.e0 <= 1e-14);
        CHECK(ce.e1 <= 1e-14);
    }
    {
        const auto ce = conditional_entanglement_closed(0.5, PovmParams::from_theta(1.0, 0.0, 0.0));
        CHECK(ce.e0 == doctest::Approx(0.4).epsilon(1e-13));
        CHECK(ce.e1 == doctest::Approx(0.4).epsilon(1e-13));
    }
    {
        // weak limit approaches the initial entanglement at the O(1/lambda)
        // rate (slowest at a = 1/2)
        for (double a : {0.1, 0.3, 0.5}) {
            const auto ce3 = conditional_entanglement_closed(a, PovmParams::from_b(1e3, 0.2, 0.0));
            CHECK(std::abs(ce3.e0 - 2.0 * a) <= 2.1e-3);
            CHECK(std::abs(ce3.e1 - 2.0 * a) <= 2.1e-3);
            const auto ce6 = conditional_entanglement_closed(a, PovmParams::from_b(1e6, 0.2, 0.0));
            CHECK(std::abs(ce6.e0 - 2.0 * a) <= 2e-6);
            CHECK(std::abs(ce6.e1 - 2.0 * a) <= 2e-6);
        }
    }
    {
        // vanishing branch is flagged
        const auto ce = conditional_entanglement_closed(0.0, PovmParams::from_theta(0.0, 0.0, 0.0));
        CHECK(!ce.defined0);
        CHECK(ce.defined1);
    }
}

TEST_CASE("average entanglement closed form") {
    CHECK(average_entanglement(0.5, PovmParams::from_b(0.0, 0.2, 0.0)) <= 1e-14);
    CHECK(average_entanglement(0.5, PovmParams::from_b(1.0, 0.0, 0.0)) ==
          doctest::Approx(0.4).epsilon(1e-13));
    CHECK(std::abs(average_entanglement(0.3, PovmParams::from_b(1e6, 0.1, 0.0)) - 0.6) <= 2e-6);

    // matches the probability-weighted compositional path
    SplitMix64 rng(31);
    for (int trial = 0; trial < 1000; ++trial) {
        const double a = rng.uniform(0.0, 0.5);
        const PovmParams p = random_povm_params(rng);
        const ComplementarityPoint pt = evaluate_point(a, p);
        CHECK(std::abs(average_entanglement(a, p) - pt.e_bar) <= 1e-10);
        const auto ce = conditional_entanglement_closed(a, p);
        if (pt.branch0_defined) CHECK(std::abs(ce.e0 - pt.e0) <= 1e-10);
        if (pt.branch1_defined) CHECK(std::abs(ce.e1 - pt.e1) <= 1e-10);
    }
}

TEST_CASE("saturation-gap function") {
    SplitMix64 rng(32);
    for (int trial = 0; trial < 500; ++trial) {
        const double lam = rng.uniform(0.0, 50.0);
        const double theta = rng.uniform(0.0, kPi / 4.0);
        CHECK(std::abs(h_hat(0.5, lam, theta) - 4.0 * lam) <= 1e-9);
    }
    CHECK(h_hat(0.0, 0.0, 0.0) == doctest::Approx(0.0).epsilon(1e-15));

    // central difference at the balanced weight stays flat
    for (double lam : {0.0, 1.0, 10.0, 50.0})
        for (double theta : {0.0, 0.3, kPi / 4.0}) {
            const double fd = (h_hat(0.5 + 1e-5, lam, theta) - h_hat(0.5 - 1e-5, lam, theta)) / 2e-5;
            CHECK(std::abs(fd) <= 1e-6);
        }

    CHECK_THROWS_AS((void)h_hat(1.2, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)h_hat(0.3, -1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)h_hat(0.3, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("disturbance-side points") {
    {
        const ComplementarityPoint pt = ed_point(0.5, PovmParams::from_b(1.0, 0.0, 0.0));
        CHECK(pt.e_bar == doctest::Approx(0.4).epsilon(1e-13));
        CHECK(pt.d == doctest::Approx(0.2).epsilon(1e-15));
        CHECK(pt.margin_ed == doctest::Approx(0.4).epsilon(1e-12));
        CHECK(pt.e_loss == doctest::Approx(0.6).epsilon(1e-12));
        CHECK(pt.d <= pt.e_loss + 1e-12);
    }
    {
        const ComplementarityPoint pt = ed_point(0.5, PovmParams::from_b(0.0, 0.3, 0.0));
        CHECK(std::abs(pt.margin_ed) <= 1e-12);  // saturation
    }
    {
        const ComplementarityPoint pt = ed_point(0.0, PovmParams::from_b(0.7, 0.2, 1.0));
        CHECK(pt.e_bar <= 1e-13);
        CHECK(pt.margin_ed == doctest::Approx(1.0 - pt.d).epsilon(1e-12));
    }
}

TEST_CASE("gain-side points") {
    {
        const ComplementarityPoint pt = eg_point(0.5, PovmParams::from_b(1.0, 0.0, 0.0));
        CHECK(pt.e_bar == doctest::Approx(0.4).epsilon(1e-13));
        CHECK(pt.g_bar == doctest::Approx(0.6).epsilon(1e-13));
        CHECK(std::abs(pt.margin_eg) <= 1e-12);
    }
    {
        const ComplementarityPoint pt = eg_point(0.5, PovmParams::from_b(0.0, 0.0, 0.0));
        CHECK(pt.e_bar <= 1e-14);
        CHECK(pt.g_bar == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(pt.margin_eg) <= 1e-12);
    }
    {
        const ComplementarityPoint pt = eg_point(0.0, PovmParams::from_b(2.0, 0.0, 0.0));
        CHECK(pt.e_bar <= 1e-13);
        CHECK(pt.margin_eg >= -1e-12);
    }
}

TEST_CASE("margin sweep audit on a small grid") {
    const AuditReport rep = ed_eg_audit(small_grid(), 500, 77);
    CHECK(rep.pass());
    CHECK(rep.points_evaluated == small_grid().size() + 500);
    REQUIRE(rep.find("margin(E+D) over grid and samples") != nullptr);
    CHECK(rep.find("margin(E+D) over grid and samples")->worst >= -1e-9);
    REQUIRE(rep.find("margin(E+G) over grid and samples") != nullptr);
    CHECK(rep.find("margin(E+G) over grid and samples")->worst >= -1e-9);

    // the sign-injection hook must produce a reported violation
    SweepOptions hook;
    hook.negate_margins = true;
    const AuditReport bad = ed_eg_audit(small_grid(), 100, 77, hook);
    CHECK(!bad.pass());
    CHECK(!bad.find("margin(E+D) over grid and samples")->worst_args.empty());
}

TEST_CASE("parallel and serial sweeps agree bitwise") {
    SweepOptions serial;
    serial.parallel = false;
    const AuditReport a = ed_eg_audit(small_grid(), 300, 5, serial);
    const AuditReport b = ed_eg_audit(small_grid(), 300, 5);
    REQUIRE(a.checks.size() == b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) {
        CHECK(a.checks[i].worst == b.checks[i].worst);  // exact equality
        CHECK(a.checks[i].worst_args == b.checks[i].worst_args);
    }

    const AuditReport ma = mixed_audit(100, 5, serial);
    const AuditReport mb = mixed_audit(100, 5);
    for (std::size_t i = 0; i < ma.checks.size(); ++i)
        CHECK(ma.checks[i].worst == mb.checks[i].worst);
}

TEST_CASE("saturation-gap audit") {
    const AuditReport rep = h_hat_audit(30, 30);
    CHECK(rep.pass());
}

TEST_CASE("identity chain terms") {
    // chain saturates on the balanced-weight family
    CHECK(std::abs(proofchain::f1(0.5, 0.0, 1.0) - proofchain::f2(0.5, 0.0, 1.0) -
                   proofchain::f3(0.5, 0.0, 1.0)) <= 1e-12);

    // product states keep the chain nonpositive along the a = 0 line
    for (double b : {0.0, 0.1, 0.3, 0.5})
        for (double lam : {0.0, 0.5, 2.0, 20.0})
            CHECK(proofchain::f1(0.0, b, lam) - proofchain::f2(0.0, b, lam) -
                      proofchain::f3(0.0, b, lam) <= 1e-12);

    // hand-checked interior point: the flipped difference of squares equals
    // the factored right-hand side
    const double v1 = proofchain::h1(0.3, 0.2, 1.0);
    const double v2 = proofchain::h2(0.3, 0.2, 1.0);
    const double rhs = proofchain::factored_rhs(0.3, 0.2, 1.0);
    CHECK(v1 == doctest::Approx(-1.0196).epsilon(1e-9));
    CHECK(std::abs(v2 * v2 - v1 * v1 - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    CHECK(v1 + v2 >= 0.0);
}

TEST_CASE("identity chain audit on a coarse grid") {
    GridSpec g;
    for (int i = 0; i < 12; ++i) g.a_values.push_back(0.5 * i / 11.0);
    g.b_values = g.a_values;
    g.phi_values = {0.0};
    g.lambda_values = {0.0, 0.01, 0.3, 1.0, 4.0, 20.0, 50.0};
    const AuditReport rep = proof_identity_audit(g);
    CHECK(rep.pass());
    const CheckResult* adjudication = rep.find("factorization reading adjudication");
    REQUIRE(adjudication != nullptr);
    CHECK(adjudication->informational);
    CHECK(adjudication->worst_args.find("h2^2 - h1^2") != std::string::npos);
}

TEST_CASE("mixed-state audit") {
    const AuditReport rep = mixed_audit(200, 99);
    CHECK(rep.pass());
    REQUIRE(rep.find("classical mixture: E_F=0 and G=1") != nullptr);
    CHECK(rep.find("classical mixture: E_F=0 and G=1")->worst <= 1e-10);
}

TEST_CASE("phase invariance and monotonicity, sampled directly") {
    SplitMix64 rng(33);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = rng.uniform(0.0, 0.5);
        const double b = rng.uniform(0.0, 0.5);
        const double lam = rng.uniform(0.0, 50.0);
        const ComplementarityPoint p1 =
            evaluate_point(a, PovmParams::from_b(lam, b, rng.uniform(0.0, 6.28)));
        const ComplementarityPoint p2 =
            evaluate_point(a, PovmParams::from_b(lam, b, rng.uniform(0.0, 6.28)));
        CHECK(std::abs(p1.e_bar - p2.e_bar) <= 1e-10);
        CHECK(std::abs(p1.g_bar - p2.g_bar) <= 1e-10);
        CHECK(p1.e_bar <= 2.0 * a + 1e-10);
    }
}
