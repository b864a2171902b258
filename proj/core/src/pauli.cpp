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

#include "dqc3/pauli.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dqc3 {

namespace {

uint64_t low_mask(size_t n) { return n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1; }

void check_probability(double p, const char *name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
    }
}

}  // namespace

PauliOperator::PauliOperator(size_t num_qubits, uint64_t x_mask, uint64_t z_mask)
    : num_qubits_(num_qubits), x_(x_mask), z_(z_mask) {
    if (num_qubits == 0 || num_qubits > MAX_QUBITS) {
        throw std::invalid_argument("PauliOperator needs between 1 and 64 qubits");
    }
    if ((x_mask | z_mask) & ~low_mask(num_qubits)) {
        throw std::invalid_argument("PauliOperator mask has bits beyond num_qubits");
    }
}

PauliOperator PauliOperator::identity(size_t num_qubits) { return {num_qubits, 0, 0}; }

PauliOperator PauliOperator::from_string(std::string_view text) {
    uint64_t x = 0;
    uint64_t z = 0;
    for (size_t k = 0; k < text.size(); k++) {
        switch (text[k]) {
            case 'I':
            case '_':
                break;
            case 'X':
                x |= uint64_t{1} << k;
                break;
            case 'Z':
                z |= uint64_t{1} << k;
                break;
            case 'Y':
                x |= uint64_t{1} << k;
                z |= uint64_t{1} << k;
                break;
            default:
                throw std::invalid_argument("Unrecognized Pauli character in '" + std::string(text) + "'");
        }
    }
    return {text.size(), x, z};
}

PauliOperator PauliOperator::single(size_t num_qubits, size_t qubit, char pauli) {
    if (qubit >= num_qubits) {
        throw std::out_of_range("qubit index out of range");
    }
    uint64_t bit = uint64_t{1} << qubit;
    switch (pauli) {
        case 'I':
            return {num_qubits, 0, 0};
        case 'X':
            return {num_qubits, bit, 0};
        case 'Z':
            return {num_qubits, 0, bit};
        case 'Y':
            return {num_qubits, bit, bit};
        default:
            throw std::invalid_argument("Unrecognized Pauli character");
    }
}

char PauliOperator::at(size_t q) const {
    static constexpr char table[4] = {'I', 'X', 'Z', 'Y'};
    return table[static_cast<int>(x(q)) | (static_cast<int>(z(q)) << 1)];
}

size_t PauliOperator::weight() const { return static_cast<size_t>(std::popcount(x_ | z_)); }

bool PauliOperator::commutes(const PauliOperator &other) const {
    return (std::popcount(x_ & other.z_) + std::popcount(z_ & other.x_)) % 2 == 0;
}

PauliOperator PauliOperator::operator*(const PauliOperator &other) const {
    if (num_qubits_ != other.num_qubits_) {
        throw std::invalid_argument("Pauli size mismatch");
    }
    return {num_qubits_, x_ ^ other.x_, z_ ^ other.z_};
}

PauliOperator PauliOperator::restricted(std::initializer_list<size_t> qubits) const {
    return restricted(std::vector<size_t>(qubits));
}

PauliOperator PauliOperator::restricted(const std::vector<size_t> &qubits) const {
    uint64_t x = 0;
    uint64_t z = 0;
    for (size_t k = 0; k < qubits.size(); k++) {
        if (qubits[k] >= num_qubits_) {
            throw std::out_of_range("restricted(): qubit index out of range");
        }
        x |= static_cast<uint64_t>(this->x(qubits[k])) << k;
        z |= static_cast<uint64_t>(this->z(qubits[k])) << k;
    }
    return {qubits.size(), x, z};
}

PauliOperator PauliOperator::embedded(size_t num_qubits, const std::vector<size_t> &positions) const {
    if (positions.size() != num_qubits_) {
        throw std::invalid_argument("embedded(): need one position per qubit");
    }
    uint64_t x = 0;
    uint64_t z = 0;
    for (size_t k = 0; k < positions.size(); k++) {
        if (positions[k] >= num_qubits) {
            throw std::out_of_range("embedded(): position out of range");
        }
        x |= static_cast<uint64_t>(this->x(k)) << positions[k];
        z |= static_cast<uint64_t>(this->z(k)) << positions[k];
    }
    return {num_qubits, x, z};
}

std::string PauliOperator::str() const {
    std::string out;
    out.reserve(num_qubits_);
    for (size_t q = 0; q < num_qubits_; q++) {
        out.push_back(at(q));
    }
    return out;
}

std::string CliffordGate::str() const {
    switch (kind) {
        case GateKind::H:
            return "H " + std::to_string(qubit0);
        case GateKind::S:
            return "S " + std::to_string(qubit0);
        case GateKind::CNOT:
            return "CNOT " + std::to_string(qubit0) + " " + std::to_string(qubit1);
        case GateKind::CZ:
            return "CZ " + std::to_string(qubit0) + " " + std::to_string(qubit1);
    }
    return "?";
}

PauliOperator conjugate(const PauliOperator &p, const CliffordGate &g) {
    size_t n = p.num_qubits();
    if (g.qubit0 >= n || (g.is_two_qubit() && (g.qubit1 >= n || g.qubit1 == g.qubit0))) {
        throw std::out_of_range("Clifford gate qubits out of range: " + g.str());
    }
    uint64_t x = p.x_mask();
    uint64_t z = p.z_mask();
    uint64_t a = uint64_t{1} << g.qubit0;
    uint64_t b = uint64_t{1} << g.qubit1;
    auto bit = [](uint64_t m, uint64_t sel) { return (m & sel) != 0; };
    switch (g.kind) {
        case GateKind::H: {
            bool xa = bit(x, a);
            bool za = bit(z, a);
            x = (x & ~a) | (za ? a : 0);
            z = (z & ~a) | (xa ? a : 0);
            break;
        }
        case GateKind::S:
            if (bit(x, a)) z ^= a;
            break;
        case GateKind::CNOT:
            if (bit(x, a)) x ^= b;
            if (bit(z, b)) z ^= a;
            break;
        case GateKind::CZ:
            if (bit(x, b)) z ^= a;
            if (bit(x, a)) z ^= b;
            break;
    }
    return {n, x, z};
}

PauliChannel::PauliChannel(size_t num_qubits, Terms terms, bool) : num_qubits_(num_qubits), terms_(std::move(terms)) {}

PauliChannel::PauliChannel(size_t num_qubits, Terms terms) : num_qubits_(num_qubits), terms_() {
    if (num_qubits == 0 || num_qubits > PauliOperator::MAX_QUBITS) {
        throw std::invalid_argument("PauliChannel needs between 1 and 64 qubits");
    }
    double total = 0.0;
    for (const auto &[p, w] : terms) {
        if (p.num_qubits() != num_qubits) {
            throw std::invalid_argument("PauliChannel key " + p.str() + " has the wrong size");
        }
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw std::invalid_argument("PauliChannel weight must be a non-negative number");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > NORMALIZATION_TOLERANCE) {
        throw std::invalid_argument("PauliChannel weights sum to " + std::to_string(total) + ", expected 1");
    }
    for (auto &[p, w] : terms) {
        if (w > 0.0) {
            terms_.emplace(p, w);
        }
    }
    if (terms_.empty()) {
        throw std::invalid_argument("PauliChannel has no support");
    }
}

PauliChannel PauliChannel::identity(size_t num_qubits) {
    return PauliChannel(num_qubits, Terms{{PauliOperator::identity(num_qubits), 1.0}});
}

PauliChannel PauliChannel::deterministic(const PauliOperator &p) {
    return PauliChannel(p.num_qubits(), Terms{{p, 1.0}});
}

double PauliChannel::weight(const PauliOperator &p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? 0.0 : it->second;
}

double PauliChannel::total_weight() const {
    double total = 0.0;
    for (const auto &[p, w] : terms_) {
        total += w;
    }
    return total;
}

PauliChannel PauliChannel::mapped(const std::function<PauliOperator(const PauliOperator &)> &f) const {
    Terms out;
    size_t n = 0;
    for (const auto &[p, w] : terms_) {
        PauliOperator q = f(p);
        n = q.num_qubits();
        out[q] += w;
    }
    return PauliChannel(n, std::move(out), true);
}

PauliChannel PauliChannel::marginal(const std::vector<size_t> &qubits) const {
    return mapped([&](const PauliOperator &p) { return p.restricted(qubits); });
}

PauliChannel PauliChannel::embedded(size_t num_qubits, const std::vector<size_t> &positions) const {
    return mapped([&](const PauliOperator &p) { return p.embedded(num_qubits, positions); });
}

std::string PauliChannel::str() const {
    std::ostringstream out;
    out.precision(12);
    bool first = true;
    for (const auto &[p, w] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << w << "[" << p.str() << "]";
    }
    return out.str();
}

PauliChannel raw_entanglement_channel(double fidelity, double phase, double flip, double both) {
    check_probability(fidelity, "A");
    check_probability(phase, "B");
    check_probability(flip, "C");
    check_probability(both, "D");
    return PauliChannel(2, {{PauliOperator::from_string("II"), fidelity},
                            {PauliOperator::from_string("ZI"), phase},
                            {PauliOperator::from_string("XI"), flip},
                            {PauliOperator::from_string("YI"), both}});
}

PauliChannel depolarizing1(double p) {
    check_probability(p, "depolarizing rate");
    return PauliChannel(1, {{PauliOperator::from_string("I"), 1.0 - p},
                            {PauliOperator::from_string("X"), p / 3.0},
                            {PauliOperator::from_string("Y"), p / 3.0},
                            {PauliOperator::from_string("Z"), p / 3.0}});
}

PauliChannel depolarizing2(double p) {
    check_probability(p, "depolarizing rate");
    PauliChannel::Terms terms;
    for (uint64_t x = 0; x < 4; x++) {
        for (uint64_t z = 0; z < 4; z++) {
            terms[PauliOperator(2, x, z)] = (x == 0 && z == 0) ? 1.0 - p : p / 15.0;
        }
    }
    return PauliChannel(2, std::move(terms));
}

PauliChannel compose(const PauliChannel &a, const PauliChannel &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("compose(): channel size mismatch");
    }
    PauliChannel::Terms out;
    for (const auto &[pa, wa] : a.terms()) {
        for (const auto &[pb, wb] : b.terms()) {
            out[pa * pb] += wa * wb;
        }
    }
    return PauliChannel(a.num_qubits(), std::move(out));
}

PauliChannel conjugate(const PauliChannel &c, const CliffordGate &g) {
    return c.mapped([&](const PauliOperator &p) { return conjugate(p, g); });
}

PauliChannel tensor(const PauliChannel &a, const PauliChannel &b) {
    size_t n = a.num_qubits() + b.num_qubits();
    if (n > PauliOperator::MAX_QUBITS) {
        throw std::invalid_argument("tensor(): too many qubits");
    }
    PauliChannel::Terms out;
    for (const auto &[pa, wa] : a.terms()) {
        for (const auto &[pb, wb] : b.terms()) {
            PauliOperator p(n, pa.x_mask() | (pb.x_mask() << a.num_qubits()),
                            pa.z_mask() | (pb.z_mask() << a.num_qubits()));
            out[p] += wa * wb;
        }
    }
    return PauliChannel(n, std::move(out));
}

}  // namespace dqc3
