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

#include "commands.hpp"

#include <algorithm>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "dqc3/schedule.hpp"
#include "dqc3/validate.hpp"

namespace dqc3::cli {

namespace {

std::string fmt(const char *format, ...) __attribute__((format(printf, 1, 2)));

std::string fmt(const char *format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

CommandResult threshold_curve_command(const RunConfig &c) {
    ThresholdCurve curve = threshold_curve(c.p_local_grid(), c.params.p_mem, c.params.f_herald, c.threshold_options());
    CommandResult r;
    r.artifact = curve.csv();
    size_t feasible = 0;
    double lo = 1.0, hi = 0.0;
    for (const ThresholdPoint &p : curve.points) {
        if (!p.feasible) continue;
        feasible++;
        lo = std::min(lo, p.p_ent_star);
        hi = std::max(hi, p.p_ent_star);
    }
    if (feasible == 0) {
        r.exit_code = EXIT_INFEASIBLE;
        r.summary = fmt("threshold-curve: %zu points, none fault tolerant", curve.points.size());
    } else {
        r.summary = fmt("threshold-curve: %zu points, %zu fault tolerant, p_ent_star in [%.6g, %.6g]",
                        curve.points.size(), feasible, lo, hi);
    }
    return r;
}

CommandResult threshold_point_command(const RunConfig &c) {
    ThresholdPoint p = find_threshold(c.params.p_local, c.params.p_mem, c.params.f_herald, c.threshold_options());
    CommandResult r;
    r.artifact = std::string(ThresholdCurve::CSV_HEADER) + "\n" + ThresholdCurve::csv_row(p) + "\n";
    if (!p.feasible) {
        r.exit_code = EXIT_INFEASIBLE;
        r.summary = fmt("threshold-point: p_local=%.6g is not fault tolerant even with perfect pairs", p.p_local);
    } else {
        r.summary = fmt("threshold-point: p_local=%.6g p_ent_star=%.6g (n_rounds=%d M=%d H=%d)", p.p_local,
                        p.p_ent_star, p.best_params.n_rounds, p.best_params.M, p.best_params.H);
    }
    return r;
}

CommandResult validate_command(const RunConfig &c) {
    SampleConfig s;
    s.params = c.params;
    s.n_samples = c.n_samples;
    s.seed = c.seed;
    s.min_samples = c.min_samples;
    s.threads = c.threads;
    EmpiricalReport report = validate(s);
    CommandResult r;
    r.artifact = report.report();
    size_t judged = 0, failed = 0;
    for (const Observable &o : report.observables) {
        judged += o.compared;
        failed += o.compared && !o.pass;
    }
    r.exit_code = report.passed() ? EXIT_OK : EXIT_VALIDATION_FAILED;
    r.summary = fmt("validate: %zu samples, %zu/%zu observables within 3 sigma", report.n_samples, judged - failed,
                    judged);
    return r;
}

CommandResult build_graph_command(const RunConfig &c) {
    ConstructionSchedule s = c.lz == 0 ? build_lattice_sheet(c.lx, c.ly) : build_tpcs(c.lx, c.ly, c.lz);
    ExecutionResult run = execute(s);
    std::optional<LocalEquivalence> eq = check_equivalence(run.tableau, s.target, s.index());
    CommandResult r;
    r.artifact = s.export_text();
    r.artifact += fmt("qubits = %zu\n", s.num_qubits);
    r.artifact += fmt("steps = %zu\n", s.num_steps());
    r.artifact += fmt("projections = %zu\n", s.num_projections());
    r.artifact += fmt("target_vertices = %zu\n", s.target.num_vertices());
    r.artifact += fmt("target_edges = %zu\n", s.target.num_edges());
    r.artifact += fmt("equivalence = %s\n", eq ? "pass" : "FAIL");
    r.exit_code = eq ? EXIT_OK : EXIT_NOT_EQUIVALENT;
    r.summary = fmt("build-graph: %dx%dx%d, %zu qubits, %zu steps, equivalence %s", c.lx, c.ly, c.lz, s.num_qubits,
                    s.num_steps(), eq ? "pass" : "FAILED");
    return r;
}

CommandResult pp_walk_command(const RunConfig &c) {
    CommandResult r;
    PPModel m;
    try {
        m = pp_model(c.params, c.params.H);
    } catch (const std::domain_error &e) {
        r.exit_code = EXIT_INFEASIBLE;
        r.summary = std::string("pp-walk: ") + e.what();
        return r;
    }
    const EffectivePP &e = m.effective;
    const JointPPWalk::AtH &walk = m.joint.at(c.params.H);
    std::string &a = r.artifact;
    a += fmt("intermediate_fidelity = %.10g\n", e.intermediate.fidelity());
    a += fmt("pumping_accept_prob = %.10g\n", e.pumping.accept_prob);
    a += fmt("p_phase = %.10g\n", e.p_phase);
    a += fmt("attempts_per_raw_pair = %.10g\n", e.cost.attempts_per_raw_pair);
    a += fmt("raw_pairs_per_pp = %.10g\n", e.cost.expected_raw_pairs);
    a += fmt("eo_attempts_per_pp = %.10g\n", e.cost.expected_eo_attempts);
    a += fmt("time_per_pp = %.10g\n", e.cost.expected_elementary_steps);
    a += fmt("success_prob = %.10g\n", walk.success_prob);
    a += fmt("fail_prob = %.10g\n", walk.fail_prob);
    a += fmt("expected_pp_count = %.10g\n", walk.expected_pp_count);
    a += fmt("wrong_parity = %.10g\n", walk.outcome.wrong_parity());
    for (size_t f = 0; f < 16; f++) {
        a += fmt("client_%s = %.10g\n", PPOutcomeDistribution::pauli_at(f).str().c_str(),
                 walk.outcome.joint[f] + walk.outcome.joint[f + 16]);
    }
    ErrorBudget budget = schedule_error_budget(default_budget_model(), c.params, m);
    std::string lines = budget.report();
    size_t pos = 0;
    while (pos < lines.size()) {
        size_t end = lines.find('\n', pos);
        a += "budget_" + lines.substr(pos, end - pos + 1);
        pos = end + 1;
    }
    bool ft = is_fault_tolerant(budget);
    a += fmt("fault_tolerant = %s\n", ft ? "yes" : "no");
    r.summary = fmt("pp-walk: p_phase=%.6g success=%.6g wrong_parity=%.6g eps=%.6g %s", e.p_phase, walk.success_prob,
                    walk.outcome.wrong_parity(), budget.eps, ft ? "fault tolerant" : "not fault tolerant");
    return r;
}

}  // namespace

CommandResult run_command(const RunConfig &config) {
    config.validate();
    switch (config.command) {
        case Command::ThresholdCurve: return threshold_curve_command(config);
        case Command::ThresholdPoint: return threshold_point_command(config);
        case Command::Validate: return validate_command(config);
        case Command::BuildGraph: return build_graph_command(config);
        case Command::PPWalk: return pp_walk_command(config);
        case Command::None: break;
    }
    throw ConfigError("key 'command': no command given");
}

int run(const RunConfig &config, std::ostream &out, std::ostream &err, const std::string &input_path) {
    namespace fs = std::filesystem;
    CommandResult result;
    try {
        if (!config.output.empty() && !input_path.empty()) {
            std::error_code ec;
            if (fs::exists(config.output) && fs::equivalent(config.output, input_path, ec)) {
                throw ConfigError("key 'output': refusing to overwrite the input file '" + input_path + "'");
            }
        }
        result = run_command(config);
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << '\n';
        return EXIT_CONFIG;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return EXIT_INTERNAL;
    }
    if (config.output.empty()) {
        out << result.artifact;
    } else {
        std::ofstream file(config.output, std::ios::binary | std::ios::trunc);
        file << result.artifact;
        file.close();
        if (!file) {
            err << "error: cannot write output '" << config.output << "'\n";
            return EXIT_IO;
        }
    }
    err << result.summary << '\n';
    return result.exit_code;
}

}  // namespace dqc3::cli
