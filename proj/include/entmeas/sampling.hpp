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

#include "entmeas/linalg.hpp"
#include "entmeas/measurement.hpp"
#include "entmeas/rng.hpp"
#include "entmeas/states.hpp"

namespace entmeas {

/// Haar-ish random unitary from two Gaussian columns (Gram-Schmidt).
inline Mat2 random_unitary2(SplitMix64& rng) {
    Vec2 u{cplx(rng.gaussian(), rng.gaussian()), cplx(rng.gaussian(), rng.gaussian())};
    double n = std::sqrt(std::norm(u[0]) + std::norm(u[1]));
    u[0] /= n;
    u[1] /= n;
    Vec2 v{-std::conj(u[1]), std::conj(u[0])};
    const double ph = rng.uniform(0.0, 6.283185307179586477);
    const cplx z = std::polar(1.0, ph);
    Mat2 m;
    m(0, 0) = u[0];
    m(1, 0) = u[1];
    m(0, 1) = v[0] * z;
    m(1, 1) = v[1] * z;
    return m;
}

inline PureState random_pure_state(SplitMix64& rng) {
    return PureState::normalized(cplx(rng.gaussian(), rng.gaussian()),
                                 cplx(rng.gaussian(), rng.gaussian()),
                                 cplx(rng.gaussian(), rng.gaussian()),
                                 cplx(rng.gaussian(), rng.gaussian()));
}

/// Convex mixture of `rank` random pure projectors, exponential weights.
inline JointDensity random_density(SplitMix64& rng, int rank) {
    Mat4 rho;
    std::array<double, 4> w{};
    double total = 0.0;
    for (int k = 0; k < rank; ++k) {
        w[static_cast<std::size_t>(k)] = -std::log(1.0 - rng.uniform());
        total += w[static_cast<std::size_t>(k)];
    }
    for (int k = 0; k < rank; ++k) {
        const PureState psi = random_pure_state(rng);
        rho = rho + psi.density() * (w[static_cast<std::size_t>(k)] / total);
    }
    return JointDensity(rho);
}

inline PovmParams random_povm_params(SplitMix64& rng, double lambda_max = 50.0) {
    return PovmParams::from_b(rng.uniform(0.0, lambda_max), rng.uniform(0.0, 0.5),
                              rng.uniform(0.0, 6.283185307179586476));
}

}  // namespace entmeas
