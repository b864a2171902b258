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

#ifndef DQC3_PURIFICATION_HPP
#define DQC3_PURIFICATION_HPP

#include <map>
#include <utility>
#include <vector>

#include "dqc3/circuit.hpp"
#include "dqc3/pauli.hpp"

namespace dqc3 {

/// Two-qubit Bell-diagonal state: weights of |Phi+> and of its images under Z, X and Y
/// applied to the first qubit.
struct BellDiagonalState {
    double a = 1.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;

    /// Throws std::invalid_argument unless non-negative and normalized within 1e-12.
    void validate() const;
    /// The single-qubit error channel (I, Z, X, Y weighted a, b, c, d) on the first qubit.
    PauliChannel error_channel() const;
    static BellDiagonalState from_error_channel(const PauliChannel &channel);
    double fidelity() const { return a; }
    double bit_error() const { return c + d; }
    double phase_error() const { return b + d; }
};

/// A raw pair with infidelity p_ent split evenly between Z, X and Y errors.
BellDiagonalState uniform_raw_pair(double p_ent);

struct PumpingResult {
    BellDiagonalState state;
    double accept_prob = 1.0;
    int rounds_used = 0;
    /// Local gate and measurement layers on the accepted path, excluding EO waiting.
    int elementary_steps = 0;
    /// Acceptance probability of each round, in order.
    std::vector<double> round_accept;
};

/// Register layout shared by the pumping circuits: intermediate pair then broker pair.
namespace pumping_qubits {
inline constexpr size_t INTERMEDIATE_1 = 0;
inline constexpr size_t INTERMEDIATE_2 = 1;
inline constexpr size_t BROKER_1 = 2;
inline constexpr size_t BROKER_2 = 3;
}  // namespace pumping_qubits

/// Moves a raw broker pair onto the intermediate pair. The input frame carries the raw
/// error on INTERMEDIATE_1; each node pays one noisy two-qubit gate.
NoisyCircuit transfer_circuit(double p_local);

/// One bit-error pumping round: idle noise on the stored pair while the fresh raw pair is
/// made, a CNOT intermediate -> broker in each node, then both brokers measured in Z.
NoisyCircuit pumping_round_circuit(double p_local, double idle_rate);

/// True when the two broker measurement records agree for this frame.
bool pumping_accepts(const PauliOperator &frame);

/// Intermediate-pair error folded onto the first intermediate qubit.
PauliOperator fold_intermediate_error(const PauliOperator &frame);

/// One pumping round consuming `raw` to purify `target`. `idle_rate` is the depolarizing
/// rate suffered by each stored intermediate qubit while the raw pair is generated.
PumpingResult pump_bit_error(const BellDiagonalState &target, const BellDiagonalState &raw, double p_local,
                             double idle_rate = 0.0);

/// Transfer followed by `n_rounds` pumping rounds, each with a fresh copy of `raw`.
PumpingResult pump_schedule(const BellDiagonalState &raw, int n_rounds, double p_local, double idle_rate = 0.0);

/// Posterior probability that the majority parity is wrong after a record difference of m.
double wrong_parity_probability(double p_phase, int m);

/// Probability that the next record agrees with the current majority at difference m.
double step_probability(double p_phase, int m);

struct PPWalkParams {
    double p_phase = 0.0;
    int target_difference = 1;  // M
    int max_projections = 1;    // H

    void validate() const;
};

struct PPWalkResult {
    double success_prob = 0.0;
    double fail_prob = 0.0;
    /// Wrong-parity probability conditioned on success.
    double residual_wrong_parity = 0.0;
    /// Expected number of effective parity projections, over success and failure.
    double expected_pp_count = 0.0;
    /// Absorbing (|m|, h) states and their probabilities.
    std::map<std::pair<int, int>, double> terminal_distribution;
};

/// Exact absorption statistics of the truncated majority-vote walk.
PPWalkResult walk_dp(const PPWalkParams &params);

}  // namespace dqc3

#endif  // DQC3_PURIFICATION_HPP
