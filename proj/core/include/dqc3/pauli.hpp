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

#ifndef DQC3_PAULI_HPP
#define DQC3_PAULI_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dqc3 {

/// A Pauli operator on up to 64 qubits, phase discarded.
///
/// Qubit i carries I/X/Z/Y for (x, z) bits (0,0)/(1,0)/(0,1)/(1,1).
class PauliOperator {
   public:
    static constexpr size_t MAX_QUBITS = 64;

    PauliOperator() = default;
    PauliOperator(size_t num_qubits, uint64_t x_mask, uint64_t z_mask);

    static PauliOperator identity(size_t num_qubits);
    /// Parses a string such as "XIZ" or "_Y" ('_' and 'I' are identity).
    static PauliOperator from_string(std::string_view text);
    /// Single-qubit Pauli 'X', 'Y', 'Z' or 'I' on `qubit` of an n-qubit register.
    static PauliOperator single(size_t num_qubits, size_t qubit, char pauli);

    size_t num_qubits() const { return num_qubits_; }
    uint64_t x_mask() const { return x_; }
    uint64_t z_mask() const { return z_; }
    bool x(size_t q) const { return (x_ >> q) & 1; }
    bool z(size_t q) const { return (z_ >> q) & 1; }
    /// Character 'I', 'X', 'Y' or 'Z' on qubit q.
    char at(size_t q) const;
    bool is_identity() const { return x_ == 0 && z_ == 0; }
    size_t weight() const;
    bool commutes(const PauliOperator &other) const;

    /// Product with phase discarded.
    PauliOperator operator*(const PauliOperator &other) const;
    /// Restriction to the listed qubits, in the listed order.
    PauliOperator restricted(std::initializer_list<size_t> qubits) const;
    PauliOperator restricted(const std::vector<size_t> &qubits) const;
    /// Places this operator's qubit k onto qubit positions[k] of an n-qubit register.
    PauliOperator embedded(size_t num_qubits, const std::vector<size_t> &positions) const;

    std::string str() const;

    bool operator==(const PauliOperator &other) const = default;
    auto operator<=>(const PauliOperator &other) const = default;

   private:
    size_t num_qubits_ = 0;
    uint64_t x_ = 0;
    uint64_t z_ = 0;
};

enum class GateKind { H, S, CNOT, CZ };

/// A Clifford gate used for Pauli-frame propagation. For CNOT, qubit0 is the control.
struct CliffordGate {
    GateKind kind;
    size_t qubit0;
    size_t qubit1 = 0;

    static CliffordGate h(size_t q) { return {GateKind::H, q, 0}; }
    static CliffordGate s(size_t q) { return {GateKind::S, q, 0}; }
    static CliffordGate cnot(size_t control, size_t target) { return {GateKind::CNOT, control, target}; }
    static CliffordGate cz(size_t a, size_t b) { return {GateKind::CZ, a, b}; }

    bool is_two_qubit() const { return kind == GateKind::CNOT || kind == GateKind::CZ; }
    std::string str() const;
};

/// g P g^dagger with the phase discarded.
PauliOperator conjugate(const PauliOperator &p, const CliffordGate &g);

/// A probability distribution over Pauli operators on a fixed number of qubits.
///
/// Values are immutable once built. Construction checks non-negativity and that the
/// weights sum to one within 1e-12.
class PauliChannel {
   public:
    using Terms = std::map<PauliOperator, double>;

    static constexpr double NORMALIZATION_TOLERANCE = 1e-12;

    explicit PauliChannel(size_t num_qubits, Terms terms);

    static PauliChannel identity(size_t num_qubits);
    /// A single Pauli applied with certainty.
    static PauliChannel deterministic(const PauliOperator &p);

    size_t num_qubits() const { return num_qubits_; }
    const Terms &terms() const { return terms_; }
    size_t size() const { return terms_.size(); }
    /// Probability of `p` (zero when absent).
    double weight(const PauliOperator &p) const;
    double total_weight() const;

    /// Marginal distribution on the listed qubits, in the listed order.
    PauliChannel marginal(const std::vector<size_t> &qubits) const;
    /// The same channel acting on qubit positions[k] of an n-qubit register.
    PauliChannel embedded(size_t num_qubits, const std::vector<size_t> &positions) const;
    /// Applies f to every key, merging collisions.
    PauliChannel mapped(const std::function<PauliOperator(const PauliOperator &)> &f) const;

    std::string str() const;

   private:
    PauliChannel(size_t num_qubits, Terms terms, bool skip_checks);

    size_t num_qubits_;
    Terms terms_;
};

/// Noise of a single network entangling operation acting on the first qubit of the pair:
/// fidelity[II] + phase[ZI] + flip[XI] + both[YI].
PauliChannel raw_entanglement_channel(double fidelity, double phase, double flip, double both);

/// (1-p)[I] + p/3 ([X] + [Y] + [Z]).
PauliChannel depolarizing1(double p);

/// (1-p)[II] + p/15 (sum of the fifteen non-identity two-qubit Paulis).
PauliChannel depolarizing2(double p);

/// Distribution of the product of independent draws from a and b.
PauliChannel compose(const PauliChannel &a, const PauliChannel &b);

/// Every key replaced by g P g^dagger.
PauliChannel conjugate(const PauliChannel &c, const CliffordGate &g);

/// Product channel: a on the low qubits, b on the high qubits.
PauliChannel tensor(const PauliChannel &a, const PauliChannel &b);

}  // namespace dqc3

#endif  // DQC3_PAULI_HPP
