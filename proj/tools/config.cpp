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

#include "config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

namespace dqc3::cli {

namespace {

std::string trim(const std::string &s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string &key, const std::string &what) {
    throw ConfigError("key '" + key + "': " + what);
}

template <typename T>
T parse_number(const std::string &key, const std::string &text) {
    T value{};
    const char *first = text.data(), *last = text.data() + text.size();
    if (!text.empty() && *first == '+') first++;
    auto [end, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || end != last || text.empty()) bad(key, "malformed number '" + text + "'");
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(value)) bad(key, "value must be finite");
    }
    return value;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // Prefer the shortest form that reads back exactly.
    for (int precision = 1; precision < 17; precision++) {
        char shorter[64];
        std::snprintf(shorter, sizeof shorter, "%.*g", precision, v);
        if (std::strtod(shorter, nullptr) == v) return shorter;
    }
    return buf;
}

struct Key {
    const char *name;
    const char *help;
    std::function<void(RunConfig &, const std::string &, const std::string &)> set;
    std::function<std::string(const RunConfig &)> get;
};

template <typename Field>
Key double_key(const char *name, const char *help, Field field) {
    return {name, help,
            [field](RunConfig &c, const std::string &k, const std::string &v) { field(c) = parse_number<double>(k, v); },
            [field](const RunConfig &c) { return format_double(field(c)); }};
}

template <typename T, typename Field>
Key integer_key(const char *name, const char *help, Field field) {
    return {name, help,
            [field](RunConfig &c, const std::string &k, const std::string &v) { field(c) = parse_number<T>(k, v); },
            [field](const RunConfig &c) { return std::to_string(field(c)); }};
}

const std::vector<Key> &keys() {
    static const std::vector<Key> table = [] {
        std::vector<Key> k;
        k.push_back({"command", "threshold-curve | threshold-point | validate | build-graph | pp-walk",
                     [](RunConfig &c, const std::string &, const std::string &v) { c.command = command_from_string(v); },
                     [](const RunConfig &c) { return to_string(c.command); }});
        k.push_back(double_key("p_ent", "network infidelity of a raw pair",
                               [](auto &c) -> auto & { return c.params.p_ent; }));
        k.push_back(double_key("p_local", "local gate/measurement depolarizing rate",
                               [](auto &c) -> auto & { return c.params.p_local; }));
        k.push_back(double_key("p_mem", "memory error per idle qubit per time unit",
                               [](auto &c) -> auto & { return c.params.p_mem; }));
        k.push_back(double_key("f_herald", "heralded failure rate of one EO attempt",
                               [](auto &c) -> auto & { return c.params.f_herald; }));
        k.push_back(integer_key<int>("n_rounds", "pumping rounds per effective PP",
                                     [](auto &c) -> auto & { return c.params.n_rounds; }));
        k.push_back(integer_key<int>("M", "target record difference (>= 1)",
                                     [](auto &c) -> auto & { return c.params.M; }));
        k.push_back(integer_key<int>("H", "maximum effective PPs (>= M)",
                                     [](auto &c) -> auto & { return c.params.H; }));
        k.push_back(double_key("split_z", "relative weight of Z in the network error",
                               [](auto &c) -> auto & { return c.params.split[0]; }));
        k.push_back(double_key("split_x", "relative weight of X in the network error",
                               [](auto &c) -> auto & { return c.params.split[1]; }));
        k.push_back(double_key("split_y", "relative weight of Y in the network error",
                               [](auto &c) -> auto & { return c.params.split[2]; }));
        k.push_back(double_key("sync_factor", "duration multiplier of projection steps (>= 1)",
                               [](auto &c) -> auto & { return c.params.sync_factor; }));
        k.push_back(double_key("grid_min", "smallest p_local of the curve",
                               [](auto &c) -> auto & { return c.grid_min; }));
        k.push_back(double_key("grid_max", "largest p_local of the curve",
                               [](auto &c) -> auto & { return c.grid_max; }));
        k.push_back(integer_key<int>("grid_points", "number of p_local values",
                                     [](auto &c) -> auto & { return c.grid_points; }));
        k.push_back({"grid_scale", "log | linear",
                     [](RunConfig &c, const std::string &key, const std::string &v) {
                         if (v == "log") {
                             c.grid_log = true;
                         } else if (v == "linear") {
                             c.grid_log = false;
                         } else {
                             bad(key, "expected 'log' or 'linear', got '" + v + "'");
                         }
                     },
                     [](const RunConfig &c) { return std::string(c.grid_log ? "log" : "linear"); }});
        k.push_back(integer_key<int>("n_min", "fewest pumping rounds searched",
                                     [](auto &c) -> auto & { return c.space.n_min; }));
        k.push_back(integer_key<int>("n_max", "most pumping rounds searched",
                                     [](auto &c) -> auto & { return c.space.n_max; }));
        k.push_back(integer_key<int>("M_min", "smallest M searched",
                                     [](auto &c) -> auto & { return c.space.M_min; }));
        k.push_back(integer_key<int>("M_max", "largest M searched",
                                     [](auto &c) -> auto & { return c.space.M_max; }));
        k.push_back(integer_key<int>("H_max", "largest H searched",
                                     [](auto &c) -> auto & { return c.space.H_max; }));
        k.push_back(double_key("tol", "bisection tolerance on p_ent", [](auto &c) -> auto & { return c.tol; }));
        k.push_back(integer_key<uint64_t>("seed", "Monte Carlo seed", [](auto &c) -> auto & { return c.seed; }));
        k.push_back(integer_key<size_t>("n_samples", "Monte Carlo trials",
                                        [](auto &c) -> auto & { return c.n_samples; }));
        k.push_back(integer_key<size_t>("min_samples", "fewest trials an observable is judged on",
                                        [](auto &c) -> auto & { return c.min_samples; }));
        k.push_back(integer_key<int>("lx", "cells along x", [](auto &c) -> auto & { return c.lx; }));
        k.push_back(integer_key<int>("ly", "cells along y", [](auto &c) -> auto & { return c.ly; }));
        k.push_back(integer_key<int>("lz", "cells along z (0: one 2D sheet)", [](auto &c) -> auto & { return c.lz; }));
        k.push_back({"output", "output file (default: standard output)",
                     [](RunConfig &c, const std::string &, const std::string &v) { c.output = v; },
                     [](const RunConfig &c) { return c.output; }});
        k.push_back(integer_key<unsigned>("threads", "worker threads (0: DQC3_THREADS or all cores)",
                                          [](auto &c) -> auto & { return c.threads; }));
        return k;
    }();
    return table;
}

const Key &find_key(const std::string &name) {
    for (const Key &k : keys()) {
        if (name == k.name) return k;
    }
    throw ConfigError("unknown key '" + name + "'");
}

}  // namespace

std::string to_string(Command c) {
    switch (c) {
        case Command::None: return "";
        case Command::ThresholdCurve: return "threshold-curve";
        case Command::ThresholdPoint: return "threshold-point";
        case Command::Validate: return "validate";
        case Command::BuildGraph: return "build-graph";
        case Command::PPWalk: return "pp-walk";
    }
    return "";
}

Command command_from_string(const std::string &name) {
    for (Command c : {Command::ThresholdCurve, Command::ThresholdPoint, Command::Validate, Command::BuildGraph,
                      Command::PPWalk}) {
        if (to_string(c) == name) return c;
    }
    if (name.empty()) return Command::None;
    throw ConfigError("key 'command': unknown command '" + name + "'");
}

void RunConfig::validate() const {
    try {
        params.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    if (grid_points < 1) bad("grid_points", "must be >= 1");
    if (!(grid_min >= 0.0 && grid_min < 1.0)) bad("grid_min", "must lie in [0, 1)");
    if (!(grid_max >= grid_min && grid_max < 1.0)) bad("grid_max", "must lie in [grid_min, 1)");
    if (grid_log && !(grid_min > 0.0)) bad("grid_min", "must be > 0 on a log grid");
    if (grid_points > 1 && !(grid_max > grid_min)) bad("grid_max", "must exceed grid_min when grid_points > 1");
    if (space.n_min < 0) bad("n_min", "must be >= 0");
    if (space.n_max < space.n_min) bad("n_max", "must be >= n_min");
    if (space.M_min < 1) bad("M_min", "must be >= 1");
    if (space.M_max < space.M_min) bad("M_max", "must be >= M_min");
    if (space.H_max < space.M_min) bad("H_max", "must be >= M_min");
    if (!(tol > 0.0 && tol < 0.5)) bad("tol", "must lie in (0, 0.5)");
    if (n_samples < 1) bad("n_samples", "must be >= 1");
    if (lz < 0) bad("lz", "must be >= 0");
    if (lz == 0 && (lx < 2 || ly < 2)) bad(lx < 2 ? "lx" : "ly", "a 2D sheet needs at least 2 crosses per side");
    if (lx < 1) bad("lx", "must be >= 1");
    if (ly < 1) bad("ly", "must be >= 1");
}

ThresholdOptions RunConfig::threshold_options() const {
    ThresholdOptions o;
    o.space = space;
    o.tol = tol;
    o.sync_factor = params.sync_factor;
    o.split = params.split;
    o.threads = threads;
    return o;
}

std::vector<double> RunConfig::p_local_grid() const { return make_grid(grid_min, grid_max, grid_points, grid_log); }

const std::vector<std::string> &config_keys() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const Key &k : keys()) n.push_back(k.name);
        return n;
    }();
    return names;
}

std::string key_help(const std::string &key) { return find_key(key).help; }

void apply_setting(RunConfig &config, const std::string &key, const std::string &value) {
    find_key(key).set(config, key, trim(value));
}

std::string get_setting(const RunConfig &config, const std::string &key) { return find_key(key).get(config); }

RunConfig parse_config_text(const std::string &text, RunConfig base, const std::string &origin) {
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        number++;
        if (size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(number) + ": expected 'key = value'");
        }
        try {
            apply_setting(base, trim(line.substr(0, eq)), line.substr(eq + 1));
        } catch (const ConfigError &e) {
            throw ConfigError(origin + ":" + std::to_string(number) + ": " + e.what());
        }
    }
    return base;
}

RunConfig parse_config_file(const std::string &path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str(), std::move(base), path);
}

std::string serialize(const RunConfig &config) {
    std::string out;
    for (const Key &k : keys()) out += std::string(k.name) + " = " + k.get(config) + "\n";
    return out;
}

}  // namespace dqc3::cli
