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

// Translation of network, gate, memory and walk failures into per-qubit phase-error and
// loss rates of the finished cluster state.

#ifndef DQC3_ACCOUNTING_HPP
#define DQC3_ACCOUNTING_HPP

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dqc3/circuit.hpp"
#include "dqc3/pauli.hpp"
#include "dqc3/purification.hpp"
#include "dqc3/schedule.hpp"

namespace dqc3 {

struct ProtocolParams {
    double p_ent = 0.0;     // network infidelity 1 - A of the raw pair
    double p_local = 0.0;   // local gate / measurement depolarizing rate
    double p_mem = 0.0;     // error per idle qubit per elementary time unit
    double f_herald = 0.9;  // heralded failure rate of one EO attempt
    int n_rounds = 0;       // pumping rounds per effective PP
    int M = 1;              // target record difference
    int H = 1;              // maximum number of effective PPs
    /// Relative weights of the Z, X and Y parts of the network error (B : C : D).
    std::array<double, 3> split = {1.0, 1.0, 1.0};
    /// Scales the duration of projection steps to stand in for waiting on the slowest of
    /// the parallel projections.
    double sync_factor = 1.0;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
    BellDiagonalState raw_pair() const;

    bool operator==(const ProtocolParams &) const = default;
};

/// Expected EO attempts per delivered raw pair: 1 / (1 - f_herald).
double attempts_per_raw_pair(double f_herald);

/// 1 - (1 - p_mem)^idle_steps: chance that an idle qubit picks up an error.
double memory_rate(double idle_steps, double p_mem);

/// Depolarizing channel of rate 1 - (1 - p_mem)^idle_steps.
PauliChannel memory_channel(double idle_steps, double p_mem);

namespace pp_qubits {
inline constexpr size_t INTERMEDIATE_1 = 0;
inline constexpr size_t INTERMEDIATE_2 = 1;
inline constexpr size_t CLIENT_1 = 2;
inline constexpr size_t CLIENT_2 = 3;
}  // namespace pp_qubits

/// One raw parity projection of two clients driven by the purified intermediate pair:
/// the clients idle while the pair is prepared, then each node applies CZ(intermediate,
/// client) and measures its intermediate in X. The product of the two X outcomes is the
/// Z_C1 Z_C2 record. Noise: memory on the clients, two-qubit depolarizing after each CZ,
/// single-qubit depolarizing on each measured intermediate.
NoisyCircuit pp_application_circuit(double p_local, double client_idle_rate);

/// Whether the frame flips the recorded parity (Z on exactly one intermediate).
bool pp_record_flipped(const PauliOperator &frame);

/// The client part of a frame on the application register, as a 2-qubit operator.
PauliOperator client_part(const PauliOperator &frame);

struct PPCost {
    double attempts_per_raw_pair = 1.0;
    double expected_raw_pairs = 1.0;     // per effective PP, including pumping restarts
    double expected_eo_attempts = 1.0;   // per effective PP
    double expected_elementary_steps = 0.0;  // duration of one effective PP, in time units
    double intermediate_idle_per_round = 0.0;
    double client_idle = 0.0;             // idle units of each client per effective PP
};

/// One effective PP and the walk it feeds.
struct EffectivePP {
    BellDiagonalState intermediate;  // purified pair as seen by the application circuit
    PumpingResult pumping;
    double p_phase = 0.0;             // record-flip probability of one effective PP
    PauliChannel residual = PauliChannel::identity(2);  // client errors of one effective PP
    double fail_prob = 0.0;           // walk failure probability
    PPWalkResult walk;
    PPCost cost;
    NoisyCircuit circuit{4};          // the application circuit used for both of the above
};

/// Pumps the raw pair, runs it through the application circuit (no prior client error)
/// and feeds the record-flip rate to the walk. Throws std::domain_error when the flip rate
/// reaches 1/2.
EffectivePP effective_pp_noise(const ProtocolParams &params);

/// Composes the residual channel over the walk's distribution of consumed projections
/// (conditioned on success), then applies Z Z on the client pair with the terminal
/// wrong-parity probability.
PauliChannel client_error_accumulation(const PPWalkResult &walk, const PauliChannel &residual,
                                       const ProtocolParams &params);

/// Outcome of a purified PP given that its walk succeeded: the joint distribution of the
/// client Pauli frame and of whether the accepted parity is the wrong one.
///
/// Index = pauli_index(client frame) + 16 * wrong.
struct PPOutcomeDistribution {
    std::array<double, 32> joint{};

    static size_t pauli_index(const PauliOperator &two_qubit);
    static PauliOperator pauli_at(size_t index);

    double wrong_parity() const;
    PauliChannel client_channel() const;
};

/// The walk run exactly on the joint state (record difference, client frame): client
/// errors deposited by one raw PP bias the records of the following ones.
struct JointPPWalk {
    int M = 1;
    int max_h = 1;

    struct AtH {
        double success_prob = 0.0;
        double fail_prob = 0.0;
        double expected_pp_count = 0.0;
        PPOutcomeDistribution outcome;  // conditioned on success
    };
    std::vector<AtH> by_h;  // index H - M

    const AtH &at(int H) const;
};

/// Transition kernel of one raw PP: for each incoming client frame, the distribution of
/// (outgoing frame, record flipped).
struct PPKernel {
    std::array<std::vector<std::pair<size_t, double>>, 16> next;  // (frame + 16 * flip, prob)

    static PPKernel from_circuit(const NoisyCircuit &circuit, const BellDiagonalState &intermediate);
};

/// Runs the joint walk for target difference M and every H in [M, max_h].
JointPPWalk joint_pp_walk(const PPKernel &kernel, int M, int max_h);

struct SublatticeBudget {
    double p_z = 0.0;
    double p_zz = 0.0;
    double p_loss = 0.0;
    double eps = 0.0;  // folded phase-error probability of the worst qubit
};

struct ErrorBudget {
    double p_z = 0.0;
    double p_zz = 0.0;
    double p_loss = 0.0;
    /// Folded phase-error probability compared against the threshold.
    double eps = 0.0;
    SublatticeBudget face;
    SublatticeBudget edge;
    // Bookkeeping reported alongside.
    double expected_eo_attempts = 0.0;
    double expected_pp_count = 0.0;
    double pp_duration = 0.0;
    size_t steps = 0;

    /// A budget with both sublattices equal to (p_z, p_zz, p_loss) and eps = p_z + p_zz.
    static ErrorBudget from_rates(double p_z, double p_zz, double p_loss);
    void validate() const;
    /// key = value lines.
    std::string report() const;
};

/// Rates that drive one evaluation of a compiled schedule.
struct BudgetInputs {
    PPOutcomeDistribution pp;  // per effective PP, given success
    double pp_fail = 0.0;
    double p_local = 0.0;
    std::vector<double> idle_rate;  // per step, depolarizing rate of each idle qubit
};

/// A construction schedule compiled for fast error accounting.
///
/// Every error location (projection, preparation, rotation, measurement, idle qubit per
/// step) is propagated once through the ideal schedule. At the end an error is rewritten
/// in its unique Z-only form on the final graph state (X on a qubit is Z on its neighbors
/// times a stabilizer) and restricted to the cluster-state qubits. Evaluating a budget is
/// then a product over precomputed hit counts.
class BudgetModel {
   public:
    explicit BudgetModel(const ConstructionSchedule &schedule);

    const ConstructionSchedule &schedule() const { return schedule_; }
    size_t num_targets() const { return targets_.size(); }
    const std::vector<VertexId> &targets() const { return targets_; }
    /// Whether step s contains a projection.
    bool is_projection_step(size_t s) const { return projection_step_[s]; }

    /// Z-only pattern on the cluster-state qubits of an error Pauli injected right after
    /// step `step` (on qubits of the schedule).
    std::vector<bool> hit_pattern(const PauliString &error, size_t step) const;

    /// Number of distinct projections whose failure deletes target t.
    size_t loss_exposure(size_t t) const;

    ErrorBudget evaluate(const BudgetInputs &inputs) const;

    /// Phase-flip probability of each target qubit, in targets() order.
    std::vector<double> qubit_flip_probabilities(const BudgetInputs &inputs) const;

   private:
    struct Compiled;

    ConstructionSchedule schedule_;
    std::vector<VertexId> targets_;
    std::vector<bool> projection_step_;
    std::shared_ptr<const Compiled> compiled_;
};

/// Per-step idle durations (in elementary units): pp_duration for steps with a
/// projection, 1 otherwise.
std::vector<double> step_durations(const BudgetModel &model, double pp_duration);

/// The lattice used for threshold estimates: 2 x 2 x 2 cells.
const BudgetModel &default_budget_model();

/// Everything about one purified PP that does not depend on the walk truncation H.
struct PPModel {
    EffectivePP effective;
    JointPPWalk joint;  // for every H up to max_h
};

/// effective_pp_noise plus the joint walk up to max_h (at least params.H).
PPModel pp_model(const ProtocolParams &params, int max_h);

/// Full pipeline for one parameter set on the given schedule model.
ErrorBudget schedule_error_budget(const BudgetModel &model, const ProtocolParams &params);
/// Same, reusing a PP model computed for the same params up to the walk truncation H.
ErrorBudget schedule_error_budget(const BudgetModel &model, const ProtocolParams &params, const PPModel &pp);
ErrorBudget schedule_error_budget(const ConstructionSchedule &schedule, const ProtocolParams &params);

}  // namespace dqc3

#endif  // DQC3_ACCOUNTING_HPP
