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

#include <cstdint>
#include <string>
#include <vector>

#include "entmeas/discrimination.hpp"
#include "entmeas/measurement.hpp"

namespace entmeas {

/// Slack allowed on the theorem margins: an order above the accumulated
/// binary64 error observed in the 2x2 kernel.
inline constexpr double kMarginSlack = 1e-9;

/// Everything measured at one (a, params) point of the canonical family.
/// Margins are 1 - (E_bar + D) and 1 - (E_bar + G_bar); both theorems say
/// they stay >= 0. Conditional quantities of a vanishing outcome are
/// reported as 0 with the matching flag cleared.
struct ComplementarityPoint {
    double a = 0.0;
    double b = 0.0;
    double phi = 0.0;
    double lambda = 0.0;
    double pi0 = 0.0, pi1 = 0.0;
    double e0 = 0.0, e1 = 0.0;
    bool branch0_defined = false, branch1_defined = false;
    double e_bar = 0.0;
    double d = 0.0;
    double g0 = 0.0, g1 = 0.0, g_bar = 0.0;
    double e_loss = 0.0;  // 2a - e_bar
    double margin_ed = 0.0;
    double margin_eg = 0.0;
};

struct ConditionalEntanglement {
    double e0 = 0.0, e1 = 0.0;
    bool defined0 = false, defined1 = false;
};

/// Closed-form conditional entanglements (stable radicand evaluation).
ConditionalEntanglement conditional_entanglement_closed(double a, const PovmParams& p);

/// Closed-form probability-weighted average entanglement.
double average_entanglement(double a, const PovmParams& p);

/// Rescaled saturation gap: h_hat = -(E_bar + D - 1) * (2 + 4*lambda*(1+lambda)).
/// Equals 4*lambda at a = 1/2 and is minimized there. Accepts a in [0, 1]
/// (the expression is symmetric about 1/2) so central differences at the
/// boundary are computable.
double h_hat(double a, double lambda, double theta);

/// Full numeric pipeline for one point: measurement, conditional states,
/// entanglements, disturbance, and the discrimination optimum.
ComplementarityPoint evaluate_point(double a, const PovmParams& p);

/// Entanglement-disturbance view of evaluate_point.
ComplementarityPoint ed_point(double a, const PovmParams& p);

/// Entanglement-gain view of evaluate_point (Bob plays the optimum).
ComplementarityPoint eg_point(double a, const PovmParams& p);

struct CheckResult {
    std::string name;
    bool pass = true;
    bool informational = false;  // recorded, never gates
    double worst = 0.0;
    double bound = 0.0;
    std::string worst_args;
};

struct AuditReport {
    std::size_t points_evaluated = 0;
    std::vector<CheckResult> checks;

    bool pass() const;
    const CheckResult* find(const std::string& name) const;
};

struct GridSpec {
    std::vector<double> a_values;
    std::vector<double> b_values;
    std::vector<double> phi_values;
    std::vector<double> lambda_values;

    std::size_t size() const {
        return a_values.size() * b_values.size() * phi_values.size() * lambda_values.size();
    }
};

/// a, b in {0, 0.01, ..., 0.5}; lambda in {0} + 50 log-spaced points in
/// [1e-3, 50]; phi in {0, pi/3, 1.7}.
GridSpec default_grid();

/// 50x50x50 over (a, b, lambda) with a single phase (the chain terms are
/// phase-free).
GridSpec default_proof_grid();

struct SweepOptions {
    bool parallel = true;
    bool negate_margins = false;  // test hook: forces margin violations
};

/// Margin sweep over the grid plus `random_samples` seeded random points:
/// theorem margins, saturation families, monotonicity, loss bounds at
/// a = 1/2 and phase invariance.
AuditReport ed_eg_audit(const GridSpec& grid, std::size_t random_samples, std::uint64_t seed,
                        const SweepOptions& opts = {});

/// Saturation-gap checks: h_hat(1/2) = 4*lambda, central-difference
/// stationarity at a = 1/2, the global lower bound, and the scaling
/// relation back to E_bar + D - 1.
AuditReport h_hat_audit(std::size_t lambda_points = 50, std::size_t theta_points = 50);

/// Audits the factorized gain-sum identity chain: the inequality
/// f1 - f2 - f3 <= 0, its equality with the direct E_bar + G_bar - 1, the
/// h1 + h2 sign, and which reading of the printed factorization actually
/// matches (informational).
AuditReport proof_identity_audit(const GridSpec& grid, const SweepOptions& opts = {});

/// Random mixed initial states (ranks 1-4) with random measurement params:
/// checks E_F + D <= 1 and E_F + G <= 1 with 1e-8 slack, the classical
/// counterexample point, and pure-sample consistency with the pure path.
AuditReport mixed_audit(std::size_t samples, std::uint64_t seed, const SweepOptions& opts = {});

/// Terms of the factorized saturation identity for the gain theorem.
/// (f1 - f2 - f3) / (sqrt(pref) * S) equals E_bar + G_bar - 1; h1/h2 are the
/// terms whose sign relation closes the chain; factored_rhs is the printed
/// factorization target.
namespace proofchain {
double f1(double a, double b, double lambda);
double f2(double a, double b, double lambda);
double f3(double a, double b, double lambda);
double h1(double a, double b, double lambda);
double h2(double a, double b, double lambda);
double factored_rhs(double a, double b, double lambda);
double gain_sum_expression(double a, double b, double lambda);
}  // namespace proofchain

}  // namespace entmeas
