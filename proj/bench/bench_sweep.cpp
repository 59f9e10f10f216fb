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

// Serial vs OpenMP throughput for the sweep kernels and the protocol
// sampler. The parallel results must be bitwise identical to the serial
// reference; this binary also asserts that while timing.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "entmeas/complementarity.hpp"
#include "entmeas/eavesdrop.hpp"

using namespace entmeas;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <typename F>
double time_call(F&& f) {
    const double t0 = now_seconds();
    f();
    return now_seconds() - t0;
}

void require(bool ok, const char* what) {
    if (!ok) {
        std::printf("MISMATCH: %s\n", what);
        std::exit(1);
    }
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t samples = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200000;

    SweepOptions serial;
    serial.parallel = false;
    SweepOptions parallel;
    parallel.parallel = true;

    std::printf("%-28s %10s %10s %8s\n", "kernel", "serial[s]", "openmp[s]", "speedup");

    {
        AuditReport rs, rp;
        const double ts = time_call([&] { rs = ed_eg_audit(default_grid(), samples, 1, serial); });
        const double tp = time_call([&] { rp = ed_eg_audit(default_grid(), samples, 1, parallel); });
        for (std::size_t i = 0; i < rs.checks.size(); ++i)
            require(rs.checks[i].worst == rp.checks[i].worst &&
                        rs.checks[i].worst_args == rp.checks[i].worst_args,
                    "margin sweep results differ");
        std::printf("%-28s %10.3f %10.3f %7.2fx\n", "margin sweep", ts, tp, ts / tp);
    }
    {
        AuditReport rs, rp;
        const double ts =
            time_call([&] { rs = proof_identity_audit(default_proof_grid(), serial); });
        const double tp =
            time_call([&] { rp = proof_identity_audit(default_proof_grid(), parallel); });
        for (std::size_t i = 0; i < rs.checks.size(); ++i)
            require(rs.checks[i].worst == rp.checks[i].worst, "identity chain results differ");
        std::printf("%-28s %10.3f %10.3f %7.2fx\n", "identity chain", ts, tp, ts / tp);
    }
    {
        AuditReport rs, rp;
        const double ts = time_call([&] { rs = mixed_audit(5000, 1, serial); });
        const double tp = time_call([&] { rp = mixed_audit(5000, 1, parallel); });
        for (std::size_t i = 0; i < rs.checks.size(); ++i)
            require(rs.checks[i].worst == rp.checks[i].worst, "mixed audit results differ");
        std::printf("%-28s %10.3f %10.3f %7.2fx\n", "mixed-state audit", ts, tp, ts / tp);
    }
    {
        ProtocolConfig cfg;
        cfg.n_pairs = 4000000;
        cfg.eve_present = true;
        cfg.eve_lambda = 0.7;
        cfg.rng_seed = 99;
        ProtocolReport rs, rp;
        const double ts = time_call([&] { rs = run_protocol(cfg, false); });
        const double tp = time_call([&] { rp = run_protocol(cfg, true); });
        require(rs.s_estimate == rp.s_estimate, "protocol estimates differ");
        std::printf("%-28s %10.3f %10.3f %7.2fx\n", "protocol sampler", ts, tp, ts / tp);
    }
    std::printf("parallel results bitwise-match the serial reference\n");
    return 0;
}
