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

#ifndef DQC3_CIRCUIT_HPP
#define DQC3_CIRCUIT_HPP

#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "dqc3/pauli.hpp"

namespace dqc3 {

/// Draws Pauli operators from a fixed channel.
class PauliSampler {
   public:
    explicit PauliSampler(const PauliChannel &channel);

    template <typename Rng>
    const PauliOperator &operator()(Rng &rng) const {
        double u = std::uniform_real_distribution<double>(0.0, total_)(rng);
        for (const auto &[cum, p] : table_) {
            if (u < cum) return p;
        }
        return table_.back().second;
    }

   private:
    std::vector<std::pair<double, PauliOperator>> table_;
    double total_ = 0.0;
};

/// A Clifford circuit interleaved with Pauli noise, on a small register.
///
/// The same instance serves both the exact channel propagation used by the analytic
/// pipeline and the per-trial sampling used by the Monte Carlo validator, so the two can
/// never disagree about circuit layout.
class NoisyCircuit {
   public:
    struct Noise {
        PauliChannel channel;
        std::vector<size_t> qubits;
        PauliSampler sampler;
    };
    using Op = std::variant<CliffordGate, Noise>;

    explicit NoisyCircuit(size_t num_qubits);

    size_t num_qubits() const { return num_qubits_; }
    const std::vector<Op> &ops() const { return ops_; }

    NoisyCircuit &gate(const CliffordGate &g);
    /// Appends `channel` acting on `qubits`. Identity channels are dropped.
    NoisyCircuit &noise(const PauliChannel &channel, std::vector<size_t> qubits);

    /// Exact output distribution of the Pauli frame given an input distribution.
    PauliChannel propagate(const PauliChannel &input) const;

    /// One stochastic trajectory of the Pauli frame.
    template <typename Rng>
    PauliOperator sample(PauliOperator frame, Rng &rng) const {
        for (const Op &op : ops_) {
            if (const auto *g = std::get_if<CliffordGate>(&op)) {
                frame = conjugate(frame, *g);
            } else {
                const auto &n = std::get<Noise>(op);
                frame = frame * n.sampler(rng).embedded(num_qubits_, n.qubits);
            }
        }
        return frame;
    }

   private:
    size_t num_qubits_;
    std::vector<Op> ops_;
};

/// SplitMix64 finalizer, used to derive independent per-trial seeds.
uint64_t splitmix64(uint64_t x);

/// The generator for trial `index` of a run seeded with `seed`. Each trial gets its own
/// stream, so results do not depend on how trials are distributed across threads.
std::mt19937_64 trial_rng(uint64_t seed, uint64_t index);

}  // namespace dqc3

#endif  // DQC3_CIRCUIT_HPP
