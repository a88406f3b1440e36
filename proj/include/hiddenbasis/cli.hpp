// Copyright 2026 The hiddenbasis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file cli.hpp
 * The experiment harness behind the `hiddenbasis` tool. Each command runs a
 * seeded verification and returns a report plus a pass flag.
 *
 * Exit codes: 0 when every check passes, 1 when a check fails, 2 for a
 * configuration error.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hiddenbasis/json_io.hpp"

namespace hiddenbasis::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitConfig = 2;

class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
    std::string command;
    std::uint64_t seed = 7;
    std::string format = "json";
    std::string output; ///< Empty means stdout.
    double tol_exact = 1e-10;
    double tol_chain = 1e-9;

    int n = 2;
    int w = 1;
    int d0 = 2;
    int d1 = 2;
    int trials = 20;
    bool identity = false;
    std::string unitary_file;
    bool trace = false;

    int t = 200;
    int l = 1;
    double theta = 0.0;
    double alpha = 0.70710678118654752440;
    bool alternate_z = false;
    bool start_at_zero = false;

    std::string prover = "honest";
    int r = 4;
    int s = 10;
    bool sweep = false;
    std::vector<int> sweep_values;

    int M = 8;
    int copies = 3; ///< Copy count t for the squash command.
    double epsilon = 1.0 / 3.0;

    std::string signature = "plus";
    int samples = 2000;
};

struct CommandResult {
    io::Json report; ///< Sweeps put their table in a "rows" array.
    bool pass = true;
};

CommandResult cmd_lift(const ExperimentConfig &c);
CommandResult cmd_prep(const ExperimentConfig &c);
CommandResult cmd_hadamard_chain(const ExperimentConfig &c);
CommandResult cmd_id_protocol(const ExperimentConfig &c);
CommandResult cmd_squash(const ExperimentConfig &c);
CommandResult cmd_forge(const ExperimentConfig &c);

/// Dispatches on c.command.
CommandResult run_command(const ExperimentConfig &c);

/// Parses argv (flags override any --config JSON); throws ConfigError.
/// Returns false when only help was requested.
bool parse_config(int argc, const char *const *argv, ExperimentConfig &config, std::ostream &out);

/// Renders a report as pretty JSON or as CSV of its scalar fields.
[[nodiscard]] std::string render(const io::Json &report, const std::string &format);

/// Full tool entry point.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace hiddenbasis::cli
