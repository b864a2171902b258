// Copyright 2026 The dqc3 Authors
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

#ifndef DQC3_TOOLS_COMMANDS_HPP
#define DQC3_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <string>

#include "config.hpp"

namespace dqc3::cli {

/// Process exit status of the tool.
enum ExitCode : int {
    EXIT_OK = 0,
    EXIT_CONFIG = 1,            // unknown key, malformed value, violated precondition
    EXIT_IO = 2,                // unreadable config or unwritable output
    EXIT_INFEASIBLE = 3,        // no fault-tolerant point / parameters outside the protocol regime
    EXIT_VALIDATION_FAILED = 4,  // a Monte Carlo observable disagrees beyond 3 sigma
    EXIT_NOT_EQUIVALENT = 5,    // built state differs from the target graph
    EXIT_INTERNAL = 6,
};

struct CommandResult {
    int exit_code = EXIT_OK;
    std::string artifact;  // CSV or key = value report
    std::string summary;   // one line, no trailing newline
};

/// Runs config.command. Validates the config first; never touches the filesystem.
CommandResult run_command(const RunConfig &config);

/// run_command, then writes the artifact to config.output (or `out`) and the summary to
/// `err`. `input_path`, when given, is never overwritten. Returns the exit status.
int run(const RunConfig &config, std::ostream &out, std::ostream &err, const std::string &input_path = "");

}  // namespace dqc3::cli

#endif  // DQC3_TOOLS_COMMANDS_HPP
