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

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "entmeas/cli.hpp"

namespace {

using entmeas::cli::ExitStatus;

int code(ExitStatus s) { return static_cast<int>(s); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-qubit weak-measurement toolkit: POVM families, post-measurement "
                 "ensembles, optimal discrimination, complementarity margins and an "
                 "eavesdropper-detection simulation"};
    app.require_subcommand(1);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "write a CSV of complementarity points");
    std::string a_spec = "0:0.5:26", b_spec = "0", phi_spec = "0", lambda_spec = "0:50:26",
                out_path;
    sweep->add_option("--a", a_spec, "a range min:max:count[:log] or a single value");
    sweep->add_option("--b", b_spec, "b range");
    sweep->add_option("--phi", phi_spec, "phase range");
    sweep->add_option("--lambda", lambda_spec, "strength range");
    sweep->add_option("--out", out_path, "output CSV path")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "run the inequality and identity audits");
    entmeas::cli::VerifyOptions vopts;
    verify->add_option("--samples", vopts.random_samples, "random points for the margin sweep");
    verify->add_option("--mixed-samples", vopts.mixed_samples, "random mixed-state samples");
    verify->add_option("--seed", vopts.seed, "master seed");
    verify->add_flag("--verbose", vopts.verbose, "per-point diagnostics");
    verify->add_flag("--serial", "disable parallel sweeps");
    verify->add_flag("--inject-bug", vopts.inject_bug, "test hook: flip margin signs")
        ->group("");  // hidden

    // discriminate
    auto* disc = app.add_subcommand("discriminate", "optimal discrimination at one point");
    double d_a = 0.5, d_b = 0.0, d_lambda = 1.0, d_phi = 0.0;
    disc->add_option("a", d_a, "schmidt weight in [0, 1/2]")->required();
    disc->add_option("b", d_b, "measurement skew in [0, 1/2]")->required();
    disc->add_option("lambda", d_lambda, "measurement strength")->required();
    disc->add_option("phi", d_phi, "measurement phase")->required();

    // eavesdrop
    auto* eav = app.add_subcommand("eavesdrop", "simulate the detection protocol");
    entmeas::ProtocolConfig cfg;
    std::string config_path;
    bool csv = false;
    eav->add_option("--pairs", cfg.n_pairs, "number of generated pairs");
    eav->add_option("--sacrifice", cfg.sacrifice_fraction, "fraction spent on the test");
    eav->add_flag("--eve,!--no-eve", cfg.eve_present, "whether the eavesdropper is present");
    eav->add_option("--eta", cfg.intercept_fraction, "fraction of pairs Eve intercepts");
    eav->add_option("--lambda-e", cfg.eve_lambda, "Eve's measurement strength");
    eav->add_option("--theta-e", cfg.eve_theta, "Eve's measurement angle");
    eav->add_option("--phi-e", cfg.eve_phi, "Eve's measurement phase");
    eav->add_option("--threshold", cfg.chsh_threshold, "detection threshold on S");
    eav->add_option("--seed", cfg.rng_seed, "master seed");
    eav->add_option("--config", config_path, "key=value config file (flags override)");
    eav->add_flag("--csv", csv, "CSV output instead of text");
    eav->add_flag("--serial", "disable the parallel pair loop");

    // povm
    auto* povm = app.add_subcommand("povm", "print the measurement pair at one point");
    double p_lambda = 0.0, p_theta = 0.0, p_phi = 0.0;
    povm->add_option("lambda", p_lambda, "strength")->required();
    povm->add_option("theta", p_theta, "angle in [0, pi/4]")->required();
    povm->add_option("phi", p_phi, "phase in [0, 2pi)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : code(ExitStatus::usage_error);
    }

    if (sweep->parsed()) {
        entmeas::cli::SweepSpec spec;
        const auto ra = entmeas::cli::parse_range(a_spec);
        const auto rb = entmeas::cli::parse_range(b_spec);
        const auto rp = entmeas::cli::parse_range(phi_spec);
        const auto rl = entmeas::cli::parse_range(lambda_spec);
        if (!ra || !rb || !rp || !rl) {
            std::cerr << "sweep: malformed range (want min:max:count[:log])\n";
            return code(ExitStatus::usage_error);
        }
        spec.a = *ra;
        spec.b = *rb;
        spec.phi = *rp;
        spec.lambda = *rl;
        spec.output_path = out_path;
        return code(entmeas::cli::cmd_sweep(spec, std::cerr));
    }

    if (verify->parsed()) {
        vopts.parallel = verify->count("--serial") == 0;
        return code(entmeas::cli::cmd_verify(vopts, std::cout));
    }

    if (disc->parsed()) return code(entmeas::cli::cmd_discriminate(d_a, d_b, d_lambda, d_phi, std::cout));

    if (eav->parsed()) {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "eavesdrop: cannot read config file '" << config_path << "'\n";
                return code(ExitStatus::usage_error);
            }
            const auto kv = entmeas::cli::parse_config_file(in);
            if (!kv) {
                std::cerr << "eavesdrop: malformed config file\n";
                return code(ExitStatus::usage_error);
            }
            std::vector<std::string> skip;
            if (eav->count("--pairs")) skip.push_back("pairs");
            if (eav->count("--sacrifice")) skip.push_back("sacrifice");
            if (eav->count("--eve") || eav->count("--no-eve")) skip.push_back("eve");
            if (eav->count("--eta")) skip.push_back("eta");
            if (eav->count("--lambda-e")) skip.push_back("lambda_e");
            if (eav->count("--theta-e")) skip.push_back("theta_e");
            if (eav->count("--phi-e")) skip.push_back("phi_e");
            if (eav->count("--threshold")) skip.push_back("threshold");
            if (eav->count("--seed")) skip.push_back("seed");
            std::string err;
            if (!entmeas::cli::apply_protocol_config(*kv, skip, cfg, err)) {
                std::cerr << "eavesdrop: " << err << "\n";
                return code(ExitStatus::usage_error);
            }
        }
        const bool parallel = eav->count("--serial") == 0;
        return code(entmeas::cli::cmd_eavesdrop(cfg, csv, parallel, std::cout));
    }

    if (povm->parsed()) return code(entmeas::cli::cmd_povm(p_lambda, p_theta, p_phi, std::cout));

    return code(ExitStatus::usage_error);
}
