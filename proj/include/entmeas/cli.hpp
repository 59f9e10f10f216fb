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

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "entmeas/complementarity.hpp"
#include "entmeas/eavesdrop.hpp"

namespace entmeas::cli {

/// 0 = all assertions pass, 1 = violation found, 2 = usage/config error.
enum class ExitStatus : int { pass = 0, violation = 1, usage_error = 2 };

/// One axis of a sweep: `count` values from min to max, linearly or
/// log-spaced. count == 1 pins the axis at min.
struct Range {
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 1;
    bool log_spaced = false;

    std::vector<double> values() const;
};

/// "min:max:count[:log]" or a bare number for a single value.
std::optional<Range> parse_range(const std::string& text);

struct SweepSpec {
    Range a;
    Range b;
    Range phi;
    Range lambda;
    std::string output_path;
};

/// Writes one CSV row per grid point (grid order a, b, lambda, phi; header
/// first; 17 significant digits; LF line endings). Exit 0 iff every margin
/// stays >= -1e-9.
ExitStatus cmd_sweep(const SweepSpec& spec, std::ostream& diag);

struct VerifyOptions {
    std::size_t random_samples = 100000;
    std::size_t mixed_samples = 1000;
    std::uint64_t seed = 1;
    bool verbose = false;
    bool inject_bug = false;  // test hook: flips margin signs
    bool parallel = true;
};

ExitStatus cmd_verify(const VerifyOptions& opts, std::ostream& out);

ExitStatus cmd_discriminate(double a, double b, double lambda, double phi, std::ostream& out);

ExitStatus cmd_eavesdrop(const ProtocolConfig& cfg, bool csv, bool parallel, std::ostream& out);

ExitStatus cmd_povm(double lambda, double theta, double phi, std::ostream& out);

/// Line-oriented key=value text, '#' starts a comment. Returns nothing on
/// any malformed line or unknown key.
std::optional<std::map<std::string, std::string>> parse_config_file(std::istream& in);

/// Applies config-file values to a ProtocolConfig; keys: pairs, sacrifice,
/// eve, eta, lambda_e, theta_e, phi_e, threshold, seed. `skip` lists keys
/// already fixed by command-line flags.
bool apply_protocol_config(const std::map<std::string, std::string>& kv,
                           const std::vector<std::string>& skip, ProtocolConfig& cfg,
                           std::string& error);

}  // namespace entmeas::cli
