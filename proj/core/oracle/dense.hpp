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

// Brute-force state-vector and density-matrix arithmetic. Test-only: it shares no code
// path with the Pauli-frame machinery it is used to check. Qubit q is bit q of a basis
// index.

#ifndef DQC3_ORACLE_DENSE_HPP
#define DQC3_ORACLE_DENSE_HPP

#include <complex>
#include <vector>

#include "dqc3/pauli.hpp"

namespace dqc3::oracle {

using Complex = std::complex<double>;
using Matrix = std::vector<std::vector<Complex>>;

inline constexpr size_t MAX_DENSE_QUBITS = 12;

/// Full 2^n x 2^n matrix of the Pauli (X, Y = iXZ, Z per qubit).
Matrix pauli_matrix(const PauliOperator &p);
/// Full 2^n x 2^n unitary of a Clifford gate.
Matrix gate_matrix(const CliffordGate &g, size_t num_qubits);
Matrix multiply(const Matrix &a, const Matrix &b);
Matrix adjoint(const Matrix &a);
/// True when a == phase * b for some unit-modulus phase.
bool equal_up_to_phase(const Matrix &a, const Matrix &b, double tol = 1e-10);

class DenseState {
   public:
    /// |0...0> on n qubits.
    explicit DenseState(size_t num_qubits);

    size_t num_qubits() const { return num_qubits_; }
    const std::vector<Complex> &amplitudes() const { return amps_; }

    DenseState &apply(const CliffordGate &g);
    DenseState &apply(const PauliOperator &p);
    DenseState &apply_x(size_t q);
    /// Projects onto the (sign)-eigenspace of p; returns the outcome probability and
    /// renormalizes. A zero-probability projection throws.
    double project(const PauliOperator &p, int sign);
    /// Expectation of a Pauli (real for Hermitian Paulis).
    double expectation(const PauliOperator &p) const;
    Complex overlap(const DenseState &other) const;
    double norm_squared() const;

    /// The Bell state (|0,mu> + (-1)^nu |1,mu^1>)/sqrt(2) on two qubits.
    static DenseState bell(int mu, int nu);

   private:
    size_t num_qubits_;
    std::vector<Complex> amps_;
};

class DensityMatrix {
   public:
    explicit DensityMatrix(size_t num_qubits);
    static DensityMatrix pure(const DenseState &psi);
    /// Sum of w_k |psi_k><psi_k|.
    static DensityMatrix mixture(const std::vector<std::pair<double, DenseState>> &parts);

    size_t num_qubits() const { return num_qubits_; }
    const Matrix &data() const { return rho_; }

    DensityMatrix &apply(const CliffordGate &g);
    /// rho -> sum_P w_P P rho P with the channel placed on `qubits`.
    DensityMatrix &apply_channel(const PauliChannel &c, const std::vector<size_t> &qubits);
    /// Applies the projector (1 + sign p)/2 without renormalizing; returns the trace removed.
    DensityMatrix &project(const PauliOperator &p, int sign);
    double trace() const;
    DensityMatrix &scale(double factor);
    /// Partial trace keeping `keep` (in that order).
    DensityMatrix reduced(const std::vector<size_t> &keep) const;
    double fidelity(const DenseState &psi) const;

    DensityMatrix &operator+=(const DensityMatrix &other);

   private:
    size_t num_qubits_;
    Matrix rho_;
};

/// Two-qubit density matrix of a Bell-diagonal state: weights of I, Z, X, Y on qubit 0
/// applied to |Phi+>.
DensityMatrix bell_diagonal(double a, double b, double c, double d);

/// The (a, b, c, d) weights of a two-qubit density matrix in the same basis.
std::vector<double> bell_coefficients(const DensityMatrix &rho);

struct DensePumpResult {
    std::vector<double> coefficients;  // a, b, c, d
    double accept_prob;
};

/// One bit-error pumping round simulated on the full 4-qubit density matrix: intermediate
/// pair on qubits 0 and 1, broker pair on 2 and 3, CNOT intermediate -> broker in each node,
/// then both brokers measured in Z and post-selected on agreement.
DensePumpResult dense_pumping_round(const std::vector<double> &target, const std::vector<double> &raw, double p_local,
                                    double idle_rate = 0.0);

}  // namespace dqc3::oracle

#endif  // DQC3_ORACLE_DENSE_HPP
