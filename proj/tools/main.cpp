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

// dqc3: threshold curves, Monte Carlo validation and graph construction from the command
// line. Every config key doubles as a `--key value` flag that overrides the config file.

#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace dqc3::cli;

int main(int argc, char **argv) {
    CLI::App app{"Fault-tolerance thresholds of distributed cluster-state construction", "dqc3"};
    app.fallthrough();
    std::string config_path;
    app.add_option("--config", config_path, "flat key = value file; flags override it");

    std::map<std::string, std::string> flags;
    for (const std::string &key : config_keys()) {
        if (key == "command") continue;
        app.add_option("--" + key, flags[key], key_help(key));
    }
    const std::pair<Command, const char *> commands[] = {
        {Command::ThresholdCurve, "largest tolerable p_ent over a p_local grid (CSV)"},
        {Command::ThresholdPoint, "largest tolerable p_ent at one p_local (CSV)"},
        {Command::Validate, "Monte Carlo check of the analytic parity-projection model"},
        {Command::BuildGraph, "build the cluster state schedule and verify it on a tableau"},
        {Command::PPWalk, "effective parity projection, walk statistics and error budget"},
    };
    std::map<std::string, CLI::App *> subcommands;
    for (const auto &[c, description] : commands) {
        subcommands[to_string(c)] = app.add_subcommand(to_string(c), description);
    }
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return EXIT_CONFIG;
    }

    RunConfig config;
    try {
        if (!config_path.empty()) {
            if (!std::ifstream(config_path)) {
                std::cerr << "error: cannot read config file '" << config_path << "'\n";
                return EXIT_IO;
            }
            config = parse_config_file(config_path);
        }
        for (const std::string &key : config_keys()) {
            if (key != "command" && app.count("--" + key) > 0) apply_setting(config, key, flags[key]);
        }
        for (const auto &[name, sub] : subcommands) {
            if (sub->parsed()) config.command = command_from_string(name);
        }
    } catch (const ConfigError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return EXIT_CONFIG;
    }
    return run(config, std::cout, std::cerr, config_path);
}
