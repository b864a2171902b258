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

#include "dqc3/purification.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dqc3 {

using namespace pumping_qubits;

void BellDiagonalState::validate() const {
    if (!(a >= 0 && b >= 0 && c >= 0 && d >= 0)) {
        throw std::invalid_argument("Bell-diagonal coefficients must be non-negative");
    }
    if (std::abs(a + b + c + d - 1.0) > 1e-12) {
        throw std::invalid_argument("Bell-diagonal coefficients must sum to 1, got " + std::to_string(a + b + c + d));
    }
}

PauliChannel BellDiagonalState::error_channel() const {
    validate();
    return PauliChannel(1, {{PauliOperator::from_string("I"), a},
                            {PauliOperator::from_string("Z"), b},
                            {PauliOperator::from_string("X"), c},
                            {PauliOperator::from_string("Y"), d}});
}

BellDiagonalState BellDiagonalState::from_error_channel(const PauliChannel &channel) {
    if (channel.num_qubits() != 1) {
        throw std::invalid_argument("Bell-diagonal error channel must act on one qubit");
    }
    return {channel.weight(PauliOperator::from_string("I")), channel.weight(PauliOperator::from_string("Z")),
            channel.weight(PauliOperator::from_string("X")), channel.weight(PauliOperator::from_string("Y"))};
}

BellDiagonalState uniform_raw_pair(double p_ent) {
    if (!(p_ent >= 0.0 && p_ent <= 1.0)) {
        throw std::invalid_argument("p_ent must lie in [0, 1]");
    }
    return {1.0 - p_ent, p_ent / 3.0, p_ent / 3.0, p_ent / 3.0};
}

NoisyCircuit transfer_circuit(double p_local) {
    NoisyCircuit c(4);
    c.noise(depolarizing2(p_local), {INTERMEDIATE_1, BROKER_1});
    c.noise(depolarizing2(p_local), {INTERMEDIATE_2, BROKER_2});
    return c;
}

NoisyCircuit pumping_round_circuit(double p_local, double idle_rate) {
    NoisyCircuit c(4);
    c.noise(depolarizing1(idle_rate), {INTERMEDIATE_1});
    c.noise(depolarizing1(idle_rate), {INTERMEDIATE_2});
    c.gate(CliffordGate::cnot(INTERMEDIATE_1, BROKER_1));
    c.gate(CliffordGate::cnot(INTERMEDIATE_2, BROKER_2));
    c.noise(depolarizing2(p_local), {INTERMEDIATE_1, BROKER_1});
    c.noise(depolarizing2(p_local), {INTERMEDIATE_2, BROKER_2});
    c.noise(depolarizing1(p_local), {BROKER_1});
    c.noise(depolarizing1(p_local), {BROKER_2});
    return c;
}

bool pumping_accepts(const PauliOperator &frame) { return frame.x(BROKER_1) == frame.x(BROKER_2); }

PauliOperator fold_intermediate_error(const PauliOperator &frame) {
    // For |Phi+>, a Pauli on the second qubit acts like the same Pauli on the first.
    return frame.restricted({INTERMEDIATE_1}) * frame.restricted({INTERMEDIATE_2});
}

namespace {

PumpingResult fold_accepted(const PauliChannel &out) {
    PauliChannel::Terms kept;
    double accept = 0.0;
    for (const auto &[p, w] : out.terms()) {
        if (pumping_accepts(p)) {
            kept[fold_intermediate_error(p)] += w;
            accept += w;
        }
    }
    PumpingResult r;
    r.accept_prob = accept;
    if (accept <= 0.0) {
        throw std::domain_error("pumping round never accepts");
    }
    for (auto &[p, w] : kept) {
        w /= accept;
    }
    r.state = BellDiagonalState::from_error_channel(PauliChannel(1, std::move(kept)));
    return r;
}

PauliChannel load_pairs(const BellDiagonalState &stored, const BellDiagonalState &raw) {
    return tensor(tensor(stored.error_channel(), PauliChannel::identity(1)),
                  tensor(raw.error_channel(), PauliChannel::identity(1)));
}

}  // namespace

PumpingResult pump_bit_error(const BellDiagonalState &target, const BellDiagonalState &raw, double p_local,
                             double idle_rate) {
    target.validate();
    raw.validate();
    PauliChannel out = pumping_round_circuit(p_local, idle_rate).propagate(load_pairs(target, raw));
    PumpingResult r = fold_accepted(out);
    r.rounds_used = 1;
    r.elementary_steps = 2;
    r.round_accept = {r.accept_prob};
    return r;
}

PumpingResult pump_schedule(const BellDiagonalState &raw, int n_rounds, double p_local, double idle_rate) {
    if (n_rounds < 0) {
        throw std::invalid_argument("n_rounds must be non-negative");
    }
    raw.validate();
    PauliChannel moved = transfer_circuit(p_local).propagate(
        tensor(tensor(raw.error_channel(), PauliChannel::identity(1)), PauliChannel::identity(2)));
    // Moving the pair into memory involves no measurement, so nothing is rejected.
    PauliChannel::Terms folded;
    for (const auto &[p, w] : moved.terms()) {
        folded[fold_intermediate_error(p)] += w;
    }
    PumpingResult r;
    r.state = BellDiagonalState::from_error_channel(PauliChannel(1, std::move(folded)));
    r.accept_prob = 1.0;
    r.elementary_steps = 1;
    for (int k = 0; k < n_rounds; k++) {
        PumpingResult next = pump_bit_error(r.state, raw, p_local, idle_rate);
        r.state = next.state;
        r.accept_prob *= next.accept_prob;
        r.round_accept.push_back(next.accept_prob);
        r.rounds_used++;
        r.elementary_steps += next.elementary_steps;
    }
    return r;
}

namespace {

void check_phase_probability(double p) {
    if (!(p >= 0.0 && p < 0.5)) {
        throw std::domain_error("parity-flip probability must lie in [0, 1/2), got " + std::to_string(p));
    }
}

}  // namespace

double wrong_parity_probability(double p_phase, int m) {
    check_phase_probability(p_phase);
    if (m < 0) {
        throw std::invalid_argument("record difference must be non-negative");
    }
    // alpha^-m / (alpha^m + alpha^-m) with alpha^2 = (1-p)/p, rewritten to stay finite at p = 0.
    double q = 1.0 - p_phase;
    double pm = std::pow(p_phase, m);
    double qm = std::pow(q, m);
    return pm / (pm + qm);
}

double step_probability(double p_phase, int m) {
    check_phase_probability(p_phase);
    if (m < 0) {
        throw std::invalid_argument("record difference must be non-negative");
    }
    double q = 1.0 - p_phase;
    double pm = std::pow(p_phase, m);
    double qm = std::pow(q, m);
    return (qm * q + pm * p_phase) / (qm + pm);
}

void PPWalkParams::validate() const {
    check_phase_probability(p_phase);
    if (target_difference < 1) {
        throw std::invalid_argument("M must be at least 1");
    }
    if (max_projections < target_difference) {
        throw std::invalid_argument("H must be at least M");
    }
}

PPWalkResult walk_dp(const PPWalkParams &params) {
    params.validate();
    const int big_m = params.target_difference;
    const int big_h = params.max_projections;
    PPWalkResult r;
    std::vector<double> mass(big_m, 0.0);
    mass[0] = 1.0;
    for (int h = 0; h < big_h; h++) {
        std::vector<double> next(big_m, 0.0);
        double absorbed = 0.0;
        for (int m = 0; m < big_m; m++) {
            if (mass[m] == 0.0) continue;
            // With no majority yet, any record makes |m| = 1.
            double up = m == 0 ? 1.0 : step_probability(params.p_phase, m);
            if (m + 1 == big_m) {
                absorbed += mass[m] * up;
            } else {
                next[m + 1] += mass[m] * up;
            }
            if (m > 0) {
                next[m - 1] += mass[m] * (1.0 - up);
            }
        }
        if (absorbed > 0.0) {
            r.terminal_distribution[{big_m, h + 1}] += absorbed;
            r.success_prob += absorbed;
            r.expected_pp_count += absorbed * (h + 1);
        }
        mass = std::move(next);
    }
    for (int m = 0; m < big_m; m++) {
        if (mass[m] > 0.0) {
            r.terminal_distribution[{m, big_h}] += mass[m];
            r.fail_prob += mass[m];
            r.expected_pp_count += mass[m] * big_h;
        }
    }
    r.residual_wrong_parity = r.success_prob > 0.0 ? wrong_parity_probability(params.p_phase, big_m) : 0.0;
    return r;
}

}  // namespace dqc3
