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

#ifndef DQC3_TABLEAU_HPP
#define DQC3_TABLEAU_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dqc3/pauli.hpp"

namespace dqc3 {

/// An unsigned Pauli string on any number of qubits, stored as packed x and z bits.
///
/// PauliOperator is capped at 64 qubits for the small registers of the purification
/// circuits; lattice-sized states need this wider form.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(size_t num_qubits);

    /// Parses "XIZ"-style text ('_' and 'I' are identity).
    static PauliString from_string(std::string_view text);
    static PauliString single(size_t num_qubits, size_t qubit, char pauli);

    size_t num_qubits() const { return num_qubits_; }
    bool x(size_t q) const { return (xs_[q >> 6] >> (q & 63)) & 1; }
    bool z(size_t q) const { return (zs_[q >> 6] >> (q & 63)) & 1; }
    void set_x(size_t q, bool v);
    void set_z(size_t q, bool v);
    /// Sets qubit q to 'I', 'X', 'Y' or 'Z'.
    void set(size_t q, char pauli);
    char at(size_t q) const;

    bool is_identity() const;
    size_t weight() const;
    bool commutes(const PauliString &other) const;
    /// Product with phase discarded.
    PauliString &operator*=(const PauliString &other);
    PauliString operator*(const PauliString &other) const;

    std::string str() const;

    const std::vector<uint64_t> &x_words() const { return xs_; }
    const std::vector<uint64_t> &z_words() const { return zs_; }

    bool operator==(const PauliString &other) const = default;

   private:
    size_t num_qubits_ = 0;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
};

/// Conjugates an unsigned Pauli string by a Clifford gate.
void conjugate_in_place(PauliString &p, const CliffordGate &g);

struct MeasurementResult {
    /// false for the +1 eigenvalue, true for -1.
    bool outcome = false;
    bool deterministic = false;
    /// For random outcomes: the Pauli that maps the post-measurement state onto the state
    /// with the opposite outcome (anticommutes with the measured operator, commutes with
    /// every other stabilizer). Identity-sized and empty for deterministic outcomes.
    PauliString destabilizer;
};

/// Stabilizer state in the destabilizer/stabilizer tableau form.
///
/// Starts in |0...0>. Measurements of arbitrary Pauli products are supported; random
/// outcomes are chosen by the caller, which keeps the tableau free of RNG state.
class Tableau {
   public:
    explicit Tableau(size_t num_qubits);

    size_t num_qubits() const { return n_; }

    void h(size_t q);
    void s(size_t q);
    void cnot(size_t control, size_t target);
    void cz(size_t a, size_t b);
    void x(size_t q);
    void z(size_t q);
    void apply(const CliffordGate &g);

    /// Measures the Pauli product `p` (with +1 phase). When the outcome is random,
    /// `outcome_if_random` is used.
    MeasurementResult measure(const PauliString &p, bool outcome_if_random = false);
    /// The outcome of measuring `p` if it is deterministic, without changing the state.
    std::optional<bool> peek(const PauliString &p) const;
    /// True when +p or -p is in the stabilizer group.
    bool stabilizes_up_to_sign(const PauliString &p) const;

    PauliString stabilizer(size_t i) const;
    PauliString destabilizer(size_t i) const;
    bool stabilizer_sign(size_t i) const;

    /// Checks the symplectic relations between all rows: stabilizers commute, destabilizer
    /// i anticommutes with stabilizer i only, destabilizers commute. These imply that the
    /// generators are independent.
    bool is_valid() const;

    std::string str() const;

   private:
    bool row_x(size_t row, size_t q) const { return (xs_[row * words_ + (q >> 6)] >> (q & 63)) & 1; }
    bool row_z(size_t row, size_t q) const { return (zs_[row * words_ + (q >> 6)] >> (q & 63)) & 1; }
    bool row_anticommutes(size_t row, const PauliString &p) const;
    bool rows_anticommute(size_t a, size_t b) const;
    /// row h <- row i * row h, tracking the sign.
    void rowsum(size_t h, size_t i);
    void set_row(size_t row, const PauliString &p, bool sign);
    PauliString row(size_t r) const;

    size_t n_;
    size_t words_;
    // Rows 0..n-1 destabilizers, n..2n-1 stabilizers.
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    std::vector<uint8_t> signs_;
};

}  // namespace dqc3

#endif  // DQC3_TABLEAU_HPP
