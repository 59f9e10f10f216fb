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

#include "entmeas/eavesdrop.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "entmeas/rng.hpp"

namespace entmeas {

namespace {

Mat2 direction_operator(double angle) {
    Mat2 m;
    m(0, 0) = std::cos(angle);
    m(0, 1) = std::sin(angle);
    m(1, 0) = std::sin(angle);
    m(1, 1) = -std::cos(angle);
    return m;
}

Mat2 direction_projector(double angle, int outcome /* 0 -> +1, 1 -> -1 */) {
    const double sgn = (outcome == 0) ? 1.0 : -1.0;
    return (Mat2::identity() + direction_operator(angle) * sgn) * 0.5;
}

double correlator(const Mat4& rho, double alice_angle, double bob_angle) {
    const Mat4 op = kron(direction_operator(bob_angle), direction_operator(alice_angle));
    return (rho * op).trace().real();
}

}  // namespace

double chsh_exact(const JointDensity& rho, const ChshAngles& angles) {
    const Mat4& m = rho.matrix();
    return correlator(m, angles.alice[0], angles.bob[0]) +
           correlator(m, angles.alice[0], angles.bob[1]) +
           correlator(m, angles.alice[1], angles.bob[0]) -
           correlator(m, angles.alice[1], angles.bob[1]);
}

JointDensity eve_channel(const JointDensity& pair_state, const PovmParams& eve, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::invalid_argument("eve_channel: intercept fraction must lie in [0, 1]");
    const MeasurementPair mp = build_povm(eve);
    const Mat2 id = Mat2::identity();
    const Mat4 k0 = kron(id, mp.m0);
    const Mat4 k1 = kron(id, mp.m1);
    const Mat4& rho = pair_state.matrix();
    const Mat4 measured = k0 * rho * k0.adjoint() + k1 * rho * k1.adjoint();
    return JointDensity(rho * (1.0 - eta) + measured * eta);
}

ProtocolReport run_protocol(const ProtocolConfig& cfg, [[maybe_unused]] bool parallel) {
    if (cfg.n_pairs < 1) throw std::invalid_argument("run_protocol: need at least one pair");
    if (!(cfg.sacrifice_fraction > 0.0 && cfg.sacrifice_fraction <= 1.0))
        throw std::invalid_argument("run_protocol: sacrifice fraction must lie in (0, 1]");
    if (!(cfg.intercept_fraction >= 0.0 && cfg.intercept_fraction <= 1.0))
        throw std::invalid_argument("run_protocol: intercept fraction must lie in [0, 1]");

    const PovmParams eve = PovmParams::from_theta(cfg.eve_lambda, cfg.eve_theta, cfg.eve_phi);
    const double eta = cfg.eve_present ? cfg.intercept_fraction : 0.0;

    const PureState source = PureState::canonical(0.5);
    const JointDensity source_rho(source);
    const JointDensity post = eve_channel(source_rho, eve, eta);

    ProtocolReport rep;
    const ChshAngles angles;
    rep.s_exact = chsh_exact(post, angles);
    rep.test_pairs = static_cast<std::uint64_t>(
        std::llround(static_cast<double>(cfg.n_pairs) * cfg.sacrifice_fraction));

    // outcome distribution per setting pair, from the exact post state
    double table[2][2][4];
    for (int ai = 0; ai < 2; ++ai)
        for (int bi = 0; bi < 2; ++bi) {
            double total = 0.0;
            for (int sa = 0; sa < 2; ++sa)
                for (int sb = 0; sb < 2; ++sb) {
                    const Mat4 proj = kron(direction_projector(angles.bob[bi], sb),
                                           direction_projector(angles.alice[ai], sa));
                    const double p = std::max(0.0, (post.matrix() * proj).trace().real());
                    table[ai][bi][2 * sa + sb] = p;
                    total += p;
                }
            for (double& p : table[ai][bi]) p /= total;
        }

    const auto sample_pair = [&](std::uint64_t i, std::uint64_t counts_out[2][2][4]) {
        SplitMix64 rng = SplitMix64::stream(cfg.rng_seed, i);
        const std::uint64_t bits = rng.next();
        const int ai = static_cast<int>(bits & 1u);
        const int bi = static_cast<int>((bits >> 1) & 1u);
        const double u = rng.uniform();
        double acc = 0.0;
        int cell = 3;
        for (int c = 0; c < 4; ++c) {
            acc += table[ai][bi][c];
            if (u < acc) {
                cell = c;
                break;
            }
        }
        ++counts_out[ai][bi][cell];
    };

#ifdef ENTMEAS_HAVE_OPENMP
    if (parallel) {
#pragma omp parallel
        {
            std::uint64_t local[2][2][4] = {};
#pragma omp for schedule(static)
            for (long long i = 0; i < static_cast<long long>(rep.test_pairs); ++i)
                sample_pair(static_cast<std::uint64_t>(i), local);
#pragma omp critical
            for (int ai = 0; ai < 2; ++ai)
                for (int bi = 0; bi < 2; ++bi)
                    for (int c = 0; c < 4; ++c)
                        rep.counts[ai][bi][c / 2][c % 2] += local[ai][bi][c];
        }
    } else {
        std::uint64_t local[2][2][4] = {};
        for (std::uint64_t i = 0; i < rep.test_pairs; ++i) sample_pair(i, local);
        for (int ai = 0; ai < 2; ++ai)
            for (int bi = 0; bi < 2; ++bi)
                for (int c = 0; c < 4; ++c) rep.counts[ai][bi][c / 2][c % 2] += local[ai][bi][c];
    }
#else
    {
        std::uint64_t local[2][2][4] = {};
        for (std::uint64_t i = 0; i < rep.test_pairs; ++i) sample_pair(i, local);
        for (int ai = 0; ai < 2; ++ai)
            for (int bi = 0; bi < 2; ++bi)
                for (int c = 0; c < 4; ++c) rep.counts[ai][bi][c / 2][c % 2] += local[ai][bi][c];
    }
#endif

    double corr[2][2] = {};
    for (int ai = 0; ai < 2; ++ai)
        for (int bi = 0; bi < 2; ++bi) {
            std::uint64_t total = 0;
            for (int sa = 0; sa < 2; ++sa)
                for (int sb = 0; sb < 2; ++sb) total += rep.counts[ai][bi][sa][sb];
            rep.setting_totals[ai][bi] = total;
            if (total < 10) rep.inconclusive = true;
            if (total > 0) {
                const double agree = static_cast<double>(rep.counts[ai][bi][0][0] +
                                                         rep.counts[ai][bi][1][1]);
                const double disagree = static_cast<double>(rep.counts[ai][bi][0][1] +
                                                            rep.counts[ai][bi][1][0]);
                corr[ai][bi] = (agree - disagree) / static_cast<double>(total);
            }
        }
    rep.s_estimate = corr[0][0] + corr[0][1] + corr[1][0] - corr[1][1];
    rep.detection_verdict = rep.s_estimate < cfg.chsh_threshold;

    // god view: exact ensemble entanglement after the channel. The untouched
    // fraction keeps the source entanglement; intercepted pairs contribute
    // the probability-weighted conditional entanglement.
    {
        const MeasurementPair mp = build_povm(eve);
        const auto [tau0, tau1] = weighted_bob_operators(source, mp);
        double measured_part = 0.0;
        for (const Mat2* tau : {&tau0, &tau1}) {
            const double w = std::max(0.0, tau->trace().real());
            if (w >= kProbabilityFloor) {
                const HermitianEig<2> eig = eig_hermitian(*tau * (1.0 / w));
                measured_part += w * 2.0 * std::clamp(eig.values[0], 0.0, 0.5);
            }
        }
        rep.god_view_e_bar = (1.0 - eta) * 1.0 + eta * measured_part;
        rep.god_view_bound = 1.0 - disturbance(cfg.eve_lambda);
        rep.god_view_applicable = cfg.eve_present && cfg.intercept_fraction == 1.0;
    }
    return rep;
}

}  // namespace entmeas
