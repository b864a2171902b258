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

#include "dense.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace dqc3::oracle {

namespace {

constexpr Complex I_UNIT{0.0, 1.0};

Matrix zeros(size_t dim) { return Matrix(dim, std::vector<Complex>(dim, 0.0)); }

Complex pauli_phase(const PauliOperator &p, size_t basis) {
    // Y = iXZ on every qubit carrying both bits.
    Complex phase = std::pow(I_UNIT, std::popcount(p.x_mask() & p.z_mask()));
    if (std::popcount(basis & p.z_mask()) % 2) phase = -phase;
    return phase;
}

void check_size(size_t n) {
    if (n == 0 || n > MAX_DENSE_QUBITS) {
        throw std::invalid_argument("dense oracle supports 1..12 qubits");
    }
}

}  // namespace

Matrix pauli_matrix(const PauliOperator &p) {
    size_t dim = size_t{1} << p.num_qubits();
    Matrix m = zeros(dim);
    for (size_t b = 0; b < dim; b++) {
        m[b ^ p.x_mask()][b] = pauli_phase(p, b);
    }
    return m;
}

Matrix gate_matrix(const CliffordGate &g, size_t num_qubits) {
    check_size(num_qubits);
    size_t dim = size_t{1} << num_qubits;
    Matrix m = zeros(dim);
    size_t a = size_t{1} << g.qubit0;
    size_t b = size_t{1} << g.qubit1;
    const double r = 1.0 / std::sqrt(2.0);
    for (size_t col = 0; col < dim; col++) {
        switch (g.kind) {
            case GateKind::H:
                m[col & ~a][col] += r;
                m[col | a][col] += (col & a) ? -r : r;
                break;
            case GateKind::S:
                m[col][col] = (col & a) ? I_UNIT : Complex(1.0);
                break;
            case GateKind::CNOT:
                m[(col & a) ? col ^ b : col][col] = 1.0;
                break;
            case GateKind::CZ:
                m[col][col] = ((col & a) && (col & b)) ? -1.0 : 1.0;
                break;
        }
    }
    return m;
}

Matrix multiply(const Matrix &a, const Matrix &b) {
    size_t n = a.size();
    Matrix out = zeros(n);
    for (size_t i = 0; i < n; i++) {
        for (size_t k = 0; k < n; k++) {
            if (a[i][k] == Complex(0.0)) continue;
            for (size_t j = 0; j < n; j++) {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return out;
}

Matrix adjoint(const Matrix &a) {
    size_t n = a.size();
    Matrix out = zeros(n);
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            out[j][i] = std::conj(a[i][j]);
        }
    }
    return out;
}

bool equal_up_to_phase(const Matrix &a, const Matrix &b, double tol) {
    if (a.size() != b.size()) return false;
    Complex phase = 0.0;
    for (size_t i = 0; i < a.size() && phase == Complex(0.0); i++) {
        for (size_t j = 0; j < a.size(); j++) {
            if (std::abs(b[i][j]) > tol) {
                phase = a[i][j] / b[i][j];
                break;
            }
        }
    }
    if (std::abs(std::abs(phase) - 1.0) > tol) return false;
    for (size_t i = 0; i < a.size(); i++) {
        for (size_t j = 0; j < a.size(); j++) {
            if (std::abs(a[i][j] - phase * b[i][j]) > tol) return false;
        }
    }
    return true;
}

DenseState::DenseState(size_t num_qubits) : num_qubits_(num_qubits) {
    check_size(num_qubits);
    amps_.assign(size_t{1} << num_qubits, 0.0);
    amps_[0] = 1.0;
}

DenseState &DenseState::apply(const CliffordGate &g) {
    size_t a = size_t{1} << g.qubit0;
    size_t b = size_t{1} << g.qubit1;
    const double r = 1.0 / std::sqrt(2.0);
    switch (g.kind) {
        case GateKind::H:
            for (size_t i = 0; i < amps_.size(); i++) {
                if (i & a) continue;
                Complex lo = amps_[i];
                Complex hi = amps_[i | a];
                amps_[i] = r * (lo + hi);
                amps_[i | a] = r * (lo - hi);
            }
            break;
        case GateKind::S:
            for (size_t i = 0; i < amps_.size(); i++) {
                if (i & a) amps_[i] *= I_UNIT;
            }
            break;
        case GateKind::CNOT:
            for (size_t i = 0; i < amps_.size(); i++) {
                if ((i & a) && !(i & b)) std::swap(amps_[i], amps_[i | b]);
            }
            break;
        case GateKind::CZ:
            for (size_t i = 0; i < amps_.size(); i++) {
                if ((i & a) && (i & b)) amps_[i] = -amps_[i];
            }
            break;
    }
    return *this;
}

DenseState &DenseState::apply(const PauliOperator &p) {
    if (p.num_qubits() != num_qubits_) {
        throw std::invalid_argument("Pauli size mismatch");
    }
    std::vector<Complex> out(amps_.size());
    for (size_t i = 0; i < amps_.size(); i++) {
        out[i ^ p.x_mask()] = pauli_phase(p, i) * amps_[i];
    }
    amps_ = std::move(out);
    return *this;
}

DenseState &DenseState::apply_x(size_t q) { return apply(PauliOperator::single(num_qubits_, q, 'X')); }

double DenseState::project(const PauliOperator &p, int sign) {
    DenseState flipped = *this;
    flipped.apply(p);
    for (size_t i = 0; i < amps_.size(); i++) {
        amps_[i] = 0.5 * (amps_[i] + static_cast<double>(sign) * flipped.amps_[i]);
    }
    double prob = norm_squared();
    if (prob < 1e-14) {
        throw std::domain_error("projection has zero probability");
    }
    for (auto &x : amps_) x /= std::sqrt(prob);
    return prob;
}

double DenseState::expectation(const PauliOperator &p) const {
    DenseState flipped = *this;
    flipped.apply(p);
    return overlap(flipped).real();
}

Complex DenseState::overlap(const DenseState &other) const {
    Complex total = 0.0;
    for (size_t i = 0; i < amps_.size(); i++) {
        total += std::conj(amps_[i]) * other.amps_[i];
    }
    return total;
}

double DenseState::norm_squared() const {
    double total = 0.0;
    for (const auto &x : amps_) total += std::norm(x);
    return total;
}

DenseState DenseState::bell(int mu, int nu) {
    DenseState s(2);
    // Basis index = q0 + 2 q1, with q0 the first qubit of |q0, q1>.
    size_t first = static_cast<size_t>(mu) << 1;
    size_t second = 1 | (static_cast<size_t>(mu ^ 1) << 1);
    s.amps_.assign(4, 0.0);
    s.amps_[first] = 1.0 / std::sqrt(2.0);
    s.amps_[second] = (nu ? -1.0 : 1.0) / std::sqrt(2.0);
    return s;
}

DensityMatrix::DensityMatrix(size_t num_qubits) : num_qubits_(num_qubits) {
    check_size(num_qubits);
    rho_ = zeros(size_t{1} << num_qubits);
}

DensityMatrix DensityMatrix::pure(const DenseState &psi) { return mixture({{1.0, psi}}); }

DensityMatrix DensityMatrix::mixture(const std::vector<std::pair<double, DenseState>> &parts) {
    DensityMatrix out(parts.at(0).second.num_qubits());
    for (const auto &[w, psi] : parts) {
        const auto &v = psi.amplitudes();
        for (size_t i = 0; i < v.size(); i++) {
            for (size_t j = 0; j < v.size(); j++) {
                out.rho_[i][j] += w * v[i] * std::conj(v[j]);
            }
        }
    }
    return out;
}

DensityMatrix &DensityMatrix::apply(const CliffordGate &g) {
    Matrix u = gate_matrix(g, num_qubits_);
    rho_ = multiply(multiply(u, rho_), adjoint(u));
    return *this;
}

DensityMatrix &DensityMatrix::apply_channel(const PauliChannel &c, const std::vector<size_t> &qubits) {
    Matrix out = zeros(rho_.size());
    for (const auto &[p, w] : c.terms()) {
        Matrix m = pauli_matrix(p.embedded(num_qubits_, qubits));
        Matrix term = multiply(multiply(m, rho_), adjoint(m));
        for (size_t i = 0; i < out.size(); i++) {
            for (size_t j = 0; j < out.size(); j++) {
                out[i][j] += w * term[i][j];
            }
        }
    }
    rho_ = std::move(out);
    return *this;
}

DensityMatrix &DensityMatrix::project(const PauliOperator &p, int sign) {
    Matrix proj = pauli_matrix(p);
    for (size_t i = 0; i < proj.size(); i++) {
        for (size_t j = 0; j < proj.size(); j++) {
            proj[i][j] *= 0.5 * sign;
        }
        proj[i][i] += 0.5;
    }
    rho_ = multiply(multiply(proj, rho_), proj);
    return *this;
}

double DensityMatrix::trace() const {
    double t = 0.0;
    for (size_t i = 0; i < rho_.size(); i++) t += rho_[i][i].real();
    return t;
}

DensityMatrix &DensityMatrix::scale(double factor) {
    for (auto &row : rho_) {
        for (auto &x : row) x *= factor;
    }
    return *this;
}

DensityMatrix DensityMatrix::reduced(const std::vector<size_t> &keep) const {
    DensityMatrix out(keep.size());
    size_t keep_mask = 0;
    for (size_t q : keep) keep_mask |= size_t{1} << q;
    auto project_index = [&](size_t full) {
        size_t r = 0;
        for (size_t k = 0; k < keep.size(); k++) {
            r |= ((full >> keep[k]) & 1) << k;
        }
        return r;
    };
    for (size_t i = 0; i < rho_.size(); i++) {
        for (size_t j = 0; j < rho_.size(); j++) {
            if ((i & ~keep_mask) != (j & ~keep_mask)) continue;
            out.rho_[project_index(i)][project_index(j)] += rho_[i][j];
        }
    }
    return out;
}

double DensityMatrix::fidelity(const DenseState &psi) const {
    const auto &v = psi.amplitudes();
    Complex total = 0.0;
    for (size_t i = 0; i < v.size(); i++) {
        for (size_t j = 0; j < v.size(); j++) {
            total += std::conj(v[i]) * rho_[i][j] * v[j];
        }
    }
    return total.real();
}

DensityMatrix &DensityMatrix::operator+=(const DensityMatrix &other) {
    for (size_t i = 0; i < rho_.size(); i++) {
        for (size_t j = 0; j < rho_.size(); j++) {
            rho_[i][j] += other.rho_[i][j];
        }
    }
    return *this;
}

namespace {

DenseState bell_with_error(char pauli) {
    DenseState s = DenseState::bell(0, 0);
    s.apply(PauliOperator::single(2, 0, pauli));
    return s;
}

}  // namespace

DensityMatrix bell_diagonal(double a, double b, double c, double d) {
    return DensityMatrix::mixture(
        {{a, bell_with_error('I')}, {b, bell_with_error('Z')}, {c, bell_with_error('X')}, {d, bell_with_error('Y')}});
}

std::vector<double> bell_coefficients(const DensityMatrix &rho) {
    return {rho.fidelity(bell_with_error('I')), rho.fidelity(bell_with_error('Z')), rho.fidelity(bell_with_error('X')),
            rho.fidelity(bell_with_error('Y'))};
}

DensePumpResult dense_pumping_round(const std::vector<double> &target, const std::vector<double> &raw, double p_local,
                                    double idle_rate) {
    const char labels[4] = {'I', 'Z', 'X', 'Y'};
    std::vector<std::pair<double, DenseState>> parts;
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            double w = target[i] * raw[j];
            if (w == 0.0) continue;
            DenseState s(4);
            s.apply(CliffordGate::h(0)).apply(CliffordGate::cnot(0, 1));
            s.apply(CliffordGate::h(2)).apply(CliffordGate::cnot(2, 3));
            s.apply(PauliOperator::single(4, 0, labels[i]));
            s.apply(PauliOperator::single(4, 2, labels[j]));
            parts.emplace_back(w, s);
        }
    }
    DensityMatrix rho = DensityMatrix::mixture(parts);
    rho.apply_channel(depolarizing1(idle_rate), {0});
    rho.apply_channel(depolarizing1(idle_rate), {1});
    rho.apply(CliffordGate::cnot(0, 2));
    rho.apply(CliffordGate::cnot(1, 3));
    rho.apply_channel(depolarizing2(p_local), {0, 2});
    rho.apply_channel(depolarizing2(p_local), {1, 3});
    rho.apply_channel(depolarizing1(p_local), {2});
    rho.apply_channel(depolarizing1(p_local), {3});
    rho.project(PauliOperator::from_string("IIZZ"), +1);
    double accept = rho.trace();
    DensityMatrix kept = rho.reduced({0, 1});
    kept.scale(1.0 / accept);
    return {bell_coefficients(kept), accept};
}

}  // namespace dqc3::oracle
