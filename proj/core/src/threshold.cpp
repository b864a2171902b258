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

#include "dqc3/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "dqc3/parallel.hpp"

namespace dqc3 {

double loss_adjusted_threshold(double p_loss) {
    if (!(p_loss >= 0.0 && p_loss <= 1.0)) throw std::invalid_argument("p_loss must lie in [0, 1]");
    return std::max(0.0, PHASE_THRESHOLD - (PHASE_THRESHOLD / LOSS_THRESHOLD) * p_loss);
}

double feasibility_margin(const ErrorBudget &b) {
    b.validate();
    return std::max({b.face.eps - loss_adjusted_threshold(b.face.p_loss),
                     b.edge.eps - loss_adjusted_threshold(b.edge.p_loss), b.eps - loss_adjusted_threshold(b.p_loss)});
}

bool is_fault_tolerant(const ErrorBudget &b) { return feasibility_margin(b) < 0.0; }

void SearchSpace::validate() const {
    if (n_min < 0 || n_max < n_min) throw std::invalid_argument("search space: need 0 <= n_min <= n_max");
    if (M_min < 1 || M_max < M_min) throw std::invalid_argument("search space: need 1 <= M_min <= M_max");
    if (H_max < M_min) throw std::invalid_argument("search space: H_max must be >= M_min");
}

void ThresholdOptions::validate() const {
    space.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
}

OptimizationResult optimize_params(double p_ent, double p_local, double p_mem, double f_herald,
                                   const ThresholdOptions &options) {
    options.validate();
    const BudgetModel &model = options.model ? *options.model : default_budget_model();
    const SearchSpace &space = options.space;
    OptimizationResult best;
    best.margin = std::numeric_limits<double>::infinity();
    auto rank = [](double margin, const ProtocolChoice &c) { return std::make_tuple(margin, c.H, c.n_rounds, c.M); };
    for (int n = space.n_min; n <= space.n_max; n++) {
        for (int M = space.M_min; M <= std::min(space.M_max, space.H_max); M++) {
            ProtocolParams params;
            params.p_ent = p_ent;
            params.p_local = p_local;
            params.p_mem = p_mem;
            params.f_herald = f_herald;
            params.n_rounds = n;
            params.M = M;
            params.H = M;
            params.split = options.split;
            params.sync_factor = options.sync_factor;
            PPModel pp;
            try {
                pp = pp_model(params, space.H_max);
            } catch (const std::domain_error &) {
                continue;  // no voting signal: infeasible
            }
            for (int H = M; H <= space.H_max; H++) {
                params.H = H;
                ErrorBudget b = schedule_error_budget(model, params, pp);
                double margin = feasibility_margin(b);
                ProtocolChoice c{n, M, H};
                if (!best.evaluated || rank(margin, c) < rank(best.margin, best.best)) {
                    best.evaluated = true;
                    best.best = c;
                    best.budget = b;
                    best.margin = margin;
                }
            }
        }
    }
    best.feasible = best.evaluated && best.margin < 0.0;
    return best;
}

ThresholdPoint find_threshold(double p_local, double p_mem, double f_herald, const ThresholdOptions &options) {
    options.validate();
    ThresholdPoint point;
    point.p_local = p_local;
    point.p_mem = p_mem;
    point.f_herald = f_herald;
    OptimizationResult at_zero = optimize_params(0.0, p_local, p_mem, f_herald, options);
    point.best_params = at_zero.best;
    point.budget_at_star = at_zero.budget;
    if (!at_zero.feasible) return point;
    point.feasible = true;
    // Invariant: feasible at lo, infeasible at hi (p_ent = 1/2 carries no usable pairs).
    double lo = 0.0, hi = 0.5;
    while (hi - lo > options.tol) {
        double mid = 0.5 * (lo + hi);
        OptimizationResult r = optimize_params(mid, p_local, p_mem, f_herald, options);
        if (r.feasible) {
            lo = mid;
            point.best_params = r.best;
            point.budget_at_star = r.budget;
        } else {
            hi = mid;
        }
    }
    point.p_ent_star = lo;
    return point;
}

std::string ThresholdCurve::csv_row(const ThresholdPoint &p) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%d,%d,%d,%.10g,%.10g,%.10g", p.p_local, p.p_mem,
                  p.f_herald, p.p_ent_star, p.best_params.n_rounds, p.best_params.M, p.best_params.H,
                  p.budget_at_star.p_z, p.budget_at_star.p_zz, p.budget_at_star.p_loss);
    return buf;
}

std::string ThresholdCurve::csv() const {
    std::string out = std::string(CSV_HEADER) + "\n";
    for (const ThresholdPoint &p : points) out += csv_row(p) + "\n";
    return out;
}

ThresholdCurve threshold_curve(const std::vector<double> &p_local_grid, double p_mem, double f_herald,
                               const ThresholdOptions &options) {
    options.validate();
    if (p_local_grid.empty()) throw std::invalid_argument("p_local grid is empty");
    for (size_t i = 1; i < p_local_grid.size(); i++) {
        if (!(p_local_grid[i] > p_local_grid[i - 1])) throw std::invalid_argument("p_local grid must be strictly increasing");
    }
    // Build the shared lattice before fanning out.
    if (!options.model) default_budget_model();
    ThresholdCurve curve;
    curve.points.resize(p_local_grid.size());
    parallel_for(p_local_grid.size(), thread_count(options.threads), [&](size_t i) {
        curve.points[i] = find_threshold(p_local_grid[i], p_mem, f_herald, options);
    });
    return curve;
}

std::vector<double> make_grid(double lo, double hi, int points, bool log_spaced) {
    if (points < 1) throw std::invalid_argument("grid needs at least one point");
    if (!(hi >= lo)) throw std::invalid_argument("grid needs max >= min");
    if (log_spaced && !(lo > 0.0)) throw std::invalid_argument("log grid needs min > 0");
    if (points == 1) return {lo};
    std::vector<double> g;
    for (int i = 0; i < points; i++) {
        double t = double(i) / (points - 1);
        g.push_back(log_spaced ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo));
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> default_p_local_grid() { return make_grid(1e-5, 1e-3, 9, true); }

}  // namespace dqc3
