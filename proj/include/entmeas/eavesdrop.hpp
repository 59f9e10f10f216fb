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
#include <cstdint>

#include "entmeas/measurement.hpp"
#include "entmeas/states.hpp"

namespace entmeas {

/// Correlation-test directions in the z-x plane. Defaults give the
/// maximal violation 2*sqrt(2) on the singlet-class source.
struct ChshAngles {
    std::array<double, 2> alice{0.0, 1.5707963267948966192};
    std::array<double, 2> bob{0.7853981633974483096, -0.7853981633974483096};
};

/// S = E(A1,B1) + E(A1,B2) + E(A2,B1) - E(A2,B2) from exact expectation
/// values; the direction at angle t measures cos(t)*sigma_z + sin(t)*sigma_x.
double chsh_exact(const JointDensity& rho, const ChshAngles& angles = {});

/// Eve's non-selective intercept: with weight eta the transiting qubit is
/// measured (outcome discarded downstream), with weight 1-eta the pair
/// passes untouched.
JointDensity eve_channel(const JointDensity& pair_state, const PovmParams& eve, double eta);

struct ProtocolConfig {
    std::uint64_t n_pairs = 10000;
    double sacrifice_fraction = 1.0;  // fraction of pairs spent on the test
    bool eve_present = false;
    double intercept_fraction = 1.0;  // eta
    double eve_lambda = 0.0;
    double eve_theta = 0.0;
    double eve_phi = 0.0;
    double chsh_threshold = 2.5;  // midpoint between 2*sqrt(2) and 2
    std::uint64_t rng_seed = 0;
};

struct ProtocolReport {
    std::uint64_t test_pairs = 0;
    double s_exact = 0.0;     // asymptotic value for the post-channel state
    double s_estimate = 0.0;  // finite-sample estimate
    bool detection_verdict = false;
    bool inconclusive = false;  // some setting bin got fewer than 10 shots
    double god_view_e_bar = 0.0;
    double god_view_bound = 0.0;  // 1 - D(eve lambda)
    bool god_view_applicable = false;  // bound is a theorem only for eta = 1
    // counts[a_setting][b_setting][a_outcome][b_outcome]
    std::array<std::array<std::array<std::array<std::uint64_t, 2>, 2>, 2>, 2> counts{};
    std::array<std::array<std::uint64_t, 2>, 2> setting_totals{};
};

/// Simulates the sacrificed test pairs: a maximally entangled source, the
/// (optional) intercept channel, uniformly random setting choices, and
/// outcomes sampled from the exact post-channel distribution with the
/// seeded generator. Identical configs produce bitwise-identical reports.
ProtocolReport run_protocol(const ProtocolConfig& cfg, bool parallel = true);

}  // namespace entmeas
