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

// Loss-adjusted fault-tolerance test, protocol-parameter optimization and the search for
// the largest tolerable network infidelity.

#ifndef DQC3_THRESHOLD_HPP
#define DQC3_THRESHOLD_HPP

#include <array>
#include <string>
#include <vector>

#include "dqc3/accounting.hpp"

namespace dqc3 {

/// Phase-error threshold of the cluster state without loss.
inline constexpr double PHASE_THRESHOLD = 0.0293;
/// Loss rate at which the phase-error threshold reaches zero.
inline constexpr double LOSS_THRESHOLD = 0.249;

/// max(0, 0.0293 - (0.0293 / 0.249) p_loss).
double loss_adjusted_threshold(double p_loss);

/// Largest of eps - threshold(p_loss) over the face sublattice, the edge sublattice and
/// the scalar budget. Negative means fault tolerant.
double feasibility_margin(const ErrorBudget &budget);

/// True iff every comparison in feasibility_margin passes strictly.
bool is_fault_tolerant(const ErrorBudget &budget);

struct SearchSpace {
    int n_min = 0;
    int n_max = 4;
    int M_min = 1;
    int M_max = 7;
    int H_max = 25;  // H ranges over [M, H_max]

    /// Throws std::invalid_argument when the space is empty or malformed.
    void validate() const;

    bool operator==(const SearchSpace &) const = default;
};

struct ProtocolChoice {
    int n_rounds = 0;
    int M = 1;
    int H = 1;

    bool operator==(const ProtocolChoice &) const = default;
};

struct OptimizationResult {
    bool feasible = false;
    /// False when every candidate was outside the protocol's regime (no voting signal).
    bool evaluated = false;
    ProtocolChoice best;
    ErrorBudget budget;
    double margin = 0.0;
};

/// Everything but the noise rates that a threshold computation depends on.
struct ThresholdOptions {
    SearchSpace space;
    double tol = 1e-4;  // absolute, on p_ent
    double sync_factor = 1.0;
    std::array<double, 3> split = {1.0, 1.0, 1.0};
    /// Lattice used for the budget; nullptr selects default_budget_model().
    const BudgetModel *model = nullptr;
    /// Workers for curves; 0 defers to DQC3_THREADS / the hardware.
    unsigned threads = 0;

    void validate() const;
};

/// Exhaustive search minimizing the feasibility margin; ties go to smaller H, then
/// smaller n_rounds, then smaller M.
OptimizationResult optimize_params(double p_ent, double p_local, double p_mem, double f_herald,
                                   const ThresholdOptions &options = {});

struct ThresholdPoint {
    double p_local = 0.0;
    double p_mem = 0.0;
    double f_herald = 0.0;
    double p_ent_star = 0.0;
    /// False when even a perfect network is not enough; p_ent_star is then 0.
    bool feasible = false;
    ProtocolChoice best_params;
    ErrorBudget budget_at_star;
};

/// Bisection on p_ent over [0, 1/2) for the largest feasible value, within options.tol.
ThresholdPoint find_threshold(double p_local, double p_mem, double f_herald, const ThresholdOptions &options = {});

struct ThresholdCurve {
    std::vector<ThresholdPoint> points;

    static constexpr const char *CSV_HEADER = "p_local,p_mem,f_herald,p_ent_star,n_rounds,M,H,p_z,p_zz,p_loss";
    static std::string csv_row(const ThresholdPoint &p);
    /// Header line, then one row per point.
    std::string csv() const;
};

/// find_threshold at each grid point (strictly increasing), in parallel.
ThresholdCurve threshold_curve(const std::vector<double> &p_local_grid, double p_mem, double f_herald,
                               const ThresholdOptions &options = {});

/// `points` values from lo to hi inclusive, log- or linearly spaced.
std::vector<double> make_grid(double lo, double hi, int points, bool log_spaced);

/// 1e-5 .. 1e-3, 9 log-spaced points.
std::vector<double> default_p_local_grid();

}  // namespace dqc3

#endif  // DQC3_THRESHOLD_HPP
