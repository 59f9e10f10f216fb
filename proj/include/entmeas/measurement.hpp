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

#include <optional>
#include <utility>

#include "entmeas/linalg.hpp"
#include "entmeas/states.hpp"

namespace entmeas {

/// Outcomes below this weight carry an undefined conditional state.
inline constexpr double kProbabilityFloor = 1e-14;

/// Parameters of the two-outcome weak-measurement family: strength
/// lambda >= 0 (0 = projective, large = near-identity), basis angle
/// theta in [0, pi/4] (stored as the skew b = sin^2 theta in [0, 1/2]),
/// and phase phi in [0, 2pi).
class PovmParams {
  public:
    static PovmParams from_theta(double strength, double theta, double phase);
    static PovmParams from_b(double strength, double skew, double phase);

    double strength() const { return lambda_; }
    double skew() const { return b_; }
    double theta() const;
    double phase() const { return phi_; }

  private:
    PovmParams(double lambda, double b, double phi) : lambda_(lambda), b_(b), phi_(phi) {}
    double lambda_;
    double b_;
    double phi_;
};

/// The two Hermitian psd measurement operators. m0^2 + m1^2 = I.
struct MeasurementPair {
    Mat2 m0;
    Mat2 m1;

    double completeness_residual() const;
    bool is_complete(double tol = 1e-12) const { return completeness_residual() <= tol; }
};

/// Single-qubit pointer dilation of the family: pointer angle theta_Z with
/// cos(theta_Z) = (lambda+1)/sqrt(1+2*lambda*(1+lambda)), overlap
/// F = sin(2*theta_Z), and a demo initial spin weight beta.
struct PointerModel {
    double pointer_angle;
    double overlap;
    double spin_weight;
};

/// Alice's outcome probabilities and the conditional states. Outcomes with
/// probability below kProbabilityFloor carry no conditional state.
struct OutcomeEnsemble {
    double prob0 = 0.0;
    double prob1 = 0.0;
    std::optional<ReducedState> bob_state0;
    std::optional<ReducedState> bob_state1;
    std::optional<JointDensity> joint_post0;
    std::optional<JointDensity> joint_post1;
};

/// m_i = (lambda*I + P_i) / sqrt(1+2*lambda*(1+lambda)) where P_0/P_1 are the
/// complementary rank-1 projectors encoded by (theta, phi). Eigenvalues of
/// each operator are {lambda, lambda+1}/sqrt(1+2*lambda*(1+lambda)).
MeasurementPair build_povm(const PovmParams& p);

/// D = 1/(1+2*lambda*(1+lambda)), in (0, 1]. Rejects lambda < 0.
double disturbance(double lambda);

/// Pointer-state overlap F = 2*lambda*(1+lambda)/(1+2*lambda*(1+lambda));
/// F + D = 1. Rejects lambda < 0.
double quality(double lambda);

/// Applies I (x) m_i, returning normalized outcome data. Rejects pairs
/// whose completeness residual exceeds 1e-12.
OutcomeEnsemble apply_measurement(const PureState& psi, const MeasurementPair& pair);
OutcomeEnsemble apply_measurement(const JointDensity& rho, const MeasurementPair& pair);

/// Unnormalized Bob-side operators tau_i = Tr_A[(I (x) m_i) rho (I (x) m_i)^dagger];
/// tau_i = prob_i * bob_state_i, exact even for vanishing outcomes.
std::pair<Mat2, Mat2> weighted_bob_operators(const PureState& psi, const MeasurementPair& pair);
std::pair<Mat2, Mat2> weighted_bob_operators(const JointDensity& rho, const MeasurementPair& pair);

/// Closed-form outcome probabilities for the canonical initial state
/// sqrt(a)|00> + sqrt(1-a)|11>. Matches apply_measurement within 1e-12.
std::pair<double, double> outcome_probabilities_closed(double a, const PovmParams& p);

/// Closed-form conditional Bob states for the canonical initial state;
/// branches with vanishing probability come back empty.
std::pair<std::optional<ReducedState>, std::optional<ReducedState>> bob_states_closed(
    double a, const PovmParams& p);

PointerModel pointer_model(double lambda);

/// Outcome-averaged (non-selective) channel of the pointer dilation:
/// diagonal preserved, off-diagonal scaled by F.
ReducedState von_neumann_nonselective(const ReducedState& rho, double lambda);

struct PointerEquivalenceReport {
    double max_deviation;
    bool pass;
};

/// Rebuilds the pair from the pointer-model recipe (pointer angle, basis
/// vectors k+/k-) and compares entrywise against build_povm.
PointerEquivalenceReport pointer_equivalence_check(double lambda, double theta, double phi);

/// Hermitian psd implementation U^dagger P U of the same measurement
/// operator: identical POVM element and identical outcome statistics.
Mat2 hermitize(const Mat2& m);

}  // namespace entmeas
