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
#include <tuple>
#include <utility>

#include "entmeas/linalg.hpp"
#include "entmeas/measurement.hpp"
#include "entmeas/states.hpp"

namespace entmeas {

/// Bob's minimum-error hypothesis test: which outcome did Alice obtain,
/// given priors pi_i and conditional states rho_i.
struct DiscriminationProblem {
    double prior0;
    double prior1;
    ReducedState state0;
    ReducedState state1;

    DiscriminationProblem(double p0, double p1, ReducedState s0, ReducedState s1);
};

/// Eigenvalues below this magnitude count as zero when classifying the
/// spectrum of T (below accumulated rounding for the 2x2 kernel).
inline constexpr double kEigenvalueZeroTol = 1e-12;

/// Optimal projective solution built from the sign decomposition of
/// T = pi1*rho1 - pi0*rho0. The decide-1 projector covers the strictly
/// positive eigenspace plus the zero eigenspace; positive part of T means
/// "decide Alice obtained 1".
struct HelstromSolution {
    Mat2 t_matrix;
    std::array<double, 2> eigenvalues;  // ascending
    int negative_count = 0;
    int zero_count = 0;
    int positive_count = 0;
    Mat2 pi0;
    Mat2 pi1;
    std::optional<double> err_given0;  // absent when that outcome has no weight
    std::optional<double> err_given1;
    std::optional<double> gain0;
    std::optional<double> gain1;
    double avg_error = 0.0;
    double avg_gain = 0.0;
};

Mat2 build_t(const DiscriminationProblem& problem);

/// (pi0, pi1) from the spectrum of a Hermitian T; zero eigenspace joins pi1.
std::pair<Mat2, Mat2> optimal_povm(const Mat2& t);

/// (P_err | Alice got 0, P_err | Alice got 1) for the given projectors.
std::pair<double, double> error_probabilities(const HelstromSolution& sol,
                                              const DiscriminationProblem& problem);

/// (G0, G1, average gain), G_i = 1 - 2*P_err|i.
std::tuple<double, double, double> gains(const HelstromSolution& sol,
                                         const DiscriminationProblem& problem);

/// Minimum average error (1 - ||T||_1)/2; the optimal average gain equals
/// the trace norm of T.
double helstrom_bound(const Mat2& t);

HelstromSolution solve(const DiscriminationProblem& problem);

/// Same construction from unnormalized weighted states tau_i = prior_i*rho_i;
/// robust when a branch weight vanishes (that branch's per-outcome error is
/// left absent and contributes zero weight to the averages).
HelstromSolution solve_weighted(const Mat2& weighted0, const Mat2& weighted1);

/// Closed forms for the canonical problem: initial state
/// sqrt(a)|00> + sqrt(1-a)|11> measured with the given family parameters.
/// These serve as spot-check oracles; the numeric eigendecomposition path
/// above is authoritative.
Mat2 t_closed_form(double a, const PovmParams& p);
std::pair<double, double> t_eigenvalues_closed(double a, const PovmParams& p);
std::pair<double, double> error_probabilities_closed(double a, const PovmParams& p);
std::tuple<double, double, double> gains_closed(double a, const PovmParams& p);

}  // namespace entmeas
