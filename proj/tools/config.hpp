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

// Run configuration of the dqc3 tool: flat `key = value` text, overridable by flags.

#ifndef DQC3_TOOLS_CONFIG_HPP
#define DQC3_TOOLS_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqc3/accounting.hpp"
#include "dqc3/threshold.hpp"

namespace dqc3::cli {

enum class Command { None, ThresholdCurve, ThresholdPoint, Validate, BuildGraph, PPWalk };

std::string to_string(Command c);
/// Throws ConfigError for unknown names.
Command command_from_string(const std::string &name);

/// Bad configuration input; the message names the offending key.
class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    Command command = Command::None;
    ProtocolParams params;

    // p_local grid of threshold-curve
    double grid_min = 1e-5;
    double grid_max = 1e-3;
    int grid_points = 9;
    bool grid_log = true;

    SearchSpace space;
    double tol = 1e-4;

    // validate
    uint64_t seed = 1;
    size_t n_samples = 100000;
    size_t min_samples = 100;

    // build-graph: cells per side; lz = 0 builds one 2D sheet of lx * ly crosses
    int lx = 2;
    int ly = 2;
    int lz = 1;

    std::string output;  // empty: standard output
    unsigned threads = 0;

    bool operator==(const RunConfig &) const = default;

    /// Checks every downstream precondition. Throws ConfigError naming the key.
    void validate() const;
    ThresholdOptions threshold_options() const;
    std::vector<double> p_local_grid() const;
};

/// All recognised keys, in serialization order.
const std::vector<std::string> &config_keys();
/// One-line description of a key, for --help.
std::string key_help(const std::string &key);

/// Sets `key` from its text form. Throws ConfigError on unknown keys or bad values.
void apply_setting(RunConfig &config, const std::string &key, const std::string &value);
/// The text form of `key`, exact enough to parse back to the same value.
std::string get_setting(const RunConfig &config, const std::string &key);

/// Applies `key = value` lines on top of `base`. Blank lines and `#` comments are skipped.
/// `origin` prefixes error messages (e.g. a file name).
RunConfig parse_config_text(const std::string &text, RunConfig base = {}, const std::string &origin = "config");
RunConfig parse_config_file(const std::string &path, RunConfig base = {});

/// Every key as a `key = value` line; parse_config_text reads it back unchanged.
std::string serialize(const RunConfig &config);

}  // namespace dqc3::cli

#endif  // DQC3_TOOLS_CONFIG_HPP
