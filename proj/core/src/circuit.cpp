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

#include "dqc3/circuit.hpp"

#include <stdexcept>

namespace dqc3 {

PauliSampler::PauliSampler(const PauliChannel &channel) {
    for (const auto &[p, w] : channel.terms()) {
        total_ += w;
        table_.emplace_back(total_, p);
    }
}

NoisyCircuit::NoisyCircuit(size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0 || num_qubits > PauliOperator::MAX_QUBITS) {
        throw std::invalid_argument("NoisyCircuit size out of range");
    }
}

NoisyCircuit &NoisyCircuit::gate(const CliffordGate &g) {
    // Validates qubit indices.
    (void)conjugate(PauliOperator::identity(num_qubits_), g);
    ops_.emplace_back(g);
    return *this;
}

NoisyCircuit &NoisyCircuit::noise(const PauliChannel &channel, std::vector<size_t> qubits) {
    if (channel.num_qubits() != qubits.size()) {
        throw std::invalid_argument("noise(): channel size does not match qubit list");
    }
    for (size_t q : qubits) {
        if (q >= num_qubits_) {
            throw std::out_of_range("noise(): qubit out of range");
        }
    }
    if (channel.weight(PauliOperator::identity(channel.num_qubits())) == 1.0) {
        return *this;
    }
    ops_.emplace_back(Noise{channel, std::move(qubits), PauliSampler(channel)});
    return *this;
}

PauliChannel NoisyCircuit::propagate(const PauliChannel &input) const {
    if (input.num_qubits() != num_qubits_) {
        throw std::invalid_argument("propagate(): input size mismatch");
    }
    PauliChannel state = input;
    for (const Op &op : ops_) {
        if (const auto *g = std::get_if<CliffordGate>(&op)) {
            state = conjugate(state, *g);
        } else {
            const auto &n = std::get<Noise>(op);
            state = compose(state, n.channel.embedded(num_qubits_, n.qubits));
        }
    }
    return state;
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::mt19937_64 trial_rng(uint64_t seed, uint64_t index) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL)));
}

}  // namespace dqc3
