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

#include "entmeas/discrimination.hpp"

#include <cmath>
#include <stdexcept>

namespace entmeas {

DiscriminationProblem::DiscriminationProblem(double p0, double p1, ReducedState s0, ReducedState s1)
    : prior0(p0), prior1(p1), state0(s0), state1(s1) {
    if (!(p0 >= 0.0 && p1 >= 0.0 && std::abs(p0 + p1 - 1.0) <= 1e-12))
        throw std::invalid_argument("DiscriminationProblem: priors must be >= 0 and sum to 1");
}

Mat2 build_t(const DiscriminationProblem& problem) {
    return problem.state1.matrix() * problem.prior1 - problem.state0.matrix() * problem.prior0;
}

std::pair<Mat2, Mat2> optimal_povm(const Mat2& t) {
    const HermitianEig<2> eig = eig_hermitian(t);
    Mat2 pi1;
    for (int k = 0; k < 2; ++k) {
        if (eig.values[k] > -kEigenvalueZeroTol) {
            const Vec2 v = {eig.vectors(0, k), eig.vectors(1, k)};
            pi1 = pi1 + outer(v, v);
        }
    }
    return {Mat2::identity() - pi1, pi1};
}

std::pair<double, double> error_probabilities(const HelstromSolution& sol,
                                              const DiscriminationProblem& problem) {
    const double e0 = (sol.pi1 * problem.state0.matrix()).trace().real();
    const double e1 = (sol.pi0 * problem.state1.matrix()).trace().real();
    return {e0, e1};
}

std::tuple<double, double, double> gains(const HelstromSolution& sol,
                                         const DiscriminationProblem& problem) {
    const auto [e0, e1] = error_probabilities(sol, problem);
    const double g0 = 1.0 - 2.0 * e0;
    const double g1 = 1.0 - 2.0 * e1;
    return {g0, g1, problem.prior0 * g0 + problem.prior1 * g1};
}

double helstrom_bound(const Mat2& t) { return 0.5 * (1.0 - trace_norm(t)); }

HelstromSolution solve_weighted(const Mat2& weighted0, const Mat2& weighted1) {
    HelstromSolution sol;
    sol.t_matrix = weighted1 - weighted0;
    const HermitianEig<2> eig = eig_hermitian(sol.t_matrix);
    sol.eigenvalues = eig.values;
    for (double v : eig.values) {
        if (v < -kEigenvalueZeroTol)
            ++sol.negative_count;
        else if (v > kEigenvalueZeroTol)
            ++sol.positive_count;
        else
            ++sol.zero_count;
    }
    auto [pi0, pi1] = optimal_povm(sol.t_matrix);
    sol.pi0 = pi0;
    sol.pi1 = pi1;

    // prior-weighted wrong-decision masses survive vanishing branches
    const double w0 = std::max(0.0, weighted0.trace().real());
    const double w1 = std::max(0.0, weighted1.trace().real());
    const double wrong0 = std::max(0.0, (sol.pi1 * weighted0).trace().real());
    const double wrong1 = std::max(0.0, (sol.pi0 * weighted1).trace().real());
    sol.avg_error = wrong0 + wrong1;
    sol.avg_gain = 1.0 - 2.0 * sol.avg_error;
    if (w0 >= kProbabilityFloor) {
        sol.err_given0 = std::min(1.0, wrong0 / w0);
        sol.gain0 = 1.0 - 2.0 * *sol.err_given0;
    }
    if (w1 >= kProbabilityFloor) {
        sol.err_given1 = std::min(1.0, wrong1 / w1);
        sol.gain1 = 1.0 - 2.0 * *sol.err_given1;
    }
    return sol;
}

HelstromSolution solve(const DiscriminationProblem& problem) {
    return solve_weighted(problem.state0.matrix() * problem.prior0,
                          problem.state1.matrix() * problem.prior1);
}

Mat2 t_closed_form(double a, const PovmParams& p) {
    if (!(a >= 0.0 && a <= 0.5)) throw std::invalid_argument("t_closed_form: a must lie in [0, 1/2]");
    const double lam = p.strength();
    const double b = p.skew();
    const double c = (1.0 + 2.0 * lam) / (1.0 + 2.0 * lam * (1.0 + lam));
    const double g = 2.0 * std::sqrt(a * (1.0 - a) * b * (1.0 - b));
    Mat2 t;
    t(0, 0) = c * a * (-1.0 + 2.0 * b);
    t(0, 1) = -c * std::polar(g, -p.phase());
    t(1, 0) = -c * std::polar(g, p.phase());
    t(1, 1) = c * (-1.0 + a) * (-1.0 + 2.0 * b);
    return t;
}

std::pair<double, double> t_eigenvalues_closed(double a, const PovmParams& p) {
    if (!(a >= 0.0 && a <= 0.5))
        throw std::invalid_argument("t_eigenvalues_closed: a must lie in [0, 1/2]");
    const double lam = p.strength();
    const double b = p.skew();
    const double base = (1.0 - 2.0 * a) * (1.0 - 2.0 * b);
    const double rad = std::sqrt(4.0 * a * (1.0 - a) + base * base);
    const double f = (1.0 + 2.0 * lam) / (2.0 * (1.0 + 2.0 * lam * (1.0 + lam)));
    return {(base - rad) * f, (base + rad) * f};
}

std::pair<double, double> error_probabilities_closed(double a, const PovmParams& p) {
    if (!(a >= 0.0 && a <= 0.5))
        throw std::invalid_argument("error_probabilities_closed: a must lie in [0, 1/2]");
    const double lam = p.strength();
    const double b = p.skew();
    const double w = 1.0 + 2.0 * lam;
    const double root = std::sqrt(1.0 + 4.0 * (1.0 - 2.0 * a) * (1.0 - 2.0 * a) * (-1.0 + b) * b);

    const double num0 = -8.0 * a * a * (-1.0 + b) * b * w -
                        (-1.0 + 2.0 * b) * (b + 2.0 * b * lam + lam * lam) +
                        a * (-1.0 - 6.0 * b + 4.0 * b * (-3.0 + lam) * lam - 2.0 * lam * (1.0 + lam) +
                             8.0 * b * b * w);
    const double den0 = root * (b + 2.0 * b * lam + lam * lam - a * (-1.0 + 2.0 * b) * w);

    const double num1 = 8.0 * a * a * (-1.0 + b) * b * w +
                        (-1.0 + 2.0 * b) * (b + 2.0 * b * lam - (1.0 + lam) * (1.0 + lam)) -
                        a * (1.0 + 2.0 * lam + 2.0 * lam * lam + 8.0 * b * b * w -
                             2.0 * b * (5.0 + 10.0 * lam + 2.0 * lam * lam));
    const double den1 = root * ((1.0 + lam) * (1.0 + lam) - b * w + a * (-1.0 + 2.0 * b) * w);

    return {0.5 * (1.0 + num0 / den0), 0.5 * (1.0 - num1 / den1)};
}

std::tuple<double, double, double> gains_closed(double a, const PovmParams& p) {
    const auto [e0, e1] = error_probabilities_closed(a, p);
    const auto [p0, p1] = outcome_probabilities_closed(a, p);
    const double g0 = 1.0 - 2.0 * e0;
    const double g1 = 1.0 - 2.0 * e1;
    return {g0, g1, p0 * g0 + p1 * g1};
}

}  // namespace entmeas
