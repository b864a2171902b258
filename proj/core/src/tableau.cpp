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

#include "dqc3/tableau.hpp"

#include <bit>
#include <stdexcept>

namespace dqc3 {

namespace {

size_t word_count(size_t n) { return (n + 63) / 64; }

void check_qubit(size_t q, size_t n) {
    if (q >= n) {
        throw std::out_of_range("qubit " + std::to_string(q) + " out of range for " + std::to_string(n) + " qubits");
    }
}

// Exponent of i picked up when the Pauli (x1, z1) multiplies (x2, z2) from the left.
int g(bool x1, bool z1, bool x2, bool z2) {
    if (x1 && z1) return int(z2) - int(x2);
    if (x1) return z2 ? (x2 ? 1 : -1) : 0;
    if (z1) return x2 ? (z2 ? -1 : 1) : 0;
    return 0;
}

// Multiplies (ix, iz, i_sign) into (hx, hz, h_sign) from the left, over `words` words.
void multiply_signed(const uint64_t *ix, const uint64_t *iz, bool i_sign, uint64_t *hx, uint64_t *hz, uint8_t &h_sign,
                     size_t words) {
    int e = 2 * int(h_sign) + 2 * int(i_sign);
    for (size_t w = 0; w < words; w++) {
        uint64_t support = ix[w] | iz[w];
        while (support) {
            int b = std::countr_zero(support);
            support &= support - 1;
            e += g((ix[w] >> b) & 1, (iz[w] >> b) & 1, (hx[w] >> b) & 1, (hz[w] >> b) & 1);
        }
        hx[w] ^= ix[w];
        hz[w] ^= iz[w];
    }
    e = ((e % 4) + 4) % 4;
    if (e != 0 && e != 2) {
        throw std::logic_error("product of commuting Paulis acquired an imaginary phase");
    }
    h_sign = e == 2;
}

}  // namespace

PauliString::PauliString(size_t num_qubits)
    : num_qubits_(num_qubits), xs_(word_count(num_qubits), 0), zs_(word_count(num_qubits), 0) {}

PauliString PauliString::from_string(std::string_view text) {
    PauliString p(text.size());
    for (size_t q = 0; q < text.size(); q++) {
        p.set(q, text[q]);
    }
    return p;
}

PauliString PauliString::single(size_t num_qubits, size_t qubit, char pauli) {
    check_qubit(qubit, num_qubits);
    PauliString p(num_qubits);
    p.set(qubit, pauli);
    return p;
}

void PauliString::set_x(size_t q, bool v) {
    check_qubit(q, num_qubits_);
    uint64_t bit = uint64_t{1} << (q & 63);
    xs_[q >> 6] = v ? (xs_[q >> 6] | bit) : (xs_[q >> 6] & ~bit);
}

void PauliString::set_z(size_t q, bool v) {
    check_qubit(q, num_qubits_);
    uint64_t bit = uint64_t{1} << (q & 63);
    zs_[q >> 6] = v ? (zs_[q >> 6] | bit) : (zs_[q >> 6] & ~bit);
}

void PauliString::set(size_t q, char pauli) {
    switch (pauli) {
        case 'I':
        case '_':
            set_x(q, false);
            set_z(q, false);
            break;
        case 'X':
            set_x(q, true);
            set_z(q, false);
            break;
        case 'Y':
            set_x(q, true);
            set_z(q, true);
            break;
        case 'Z':
            set_x(q, false);
            set_z(q, true);
            break;
        default:
            throw std::invalid_argument(std::string("not a Pauli character: '") + pauli + "'");
    }
}

char PauliString::at(size_t q) const {
    check_qubit(q, num_qubits_);
    return "IXZY"[int(x(q)) + 2 * int(z(q))];
}

bool PauliString::is_identity() const {
    for (size_t w = 0; w < xs_.size(); w++) {
        if (xs_[w] | zs_[w]) return false;
    }
    return true;
}

size_t PauliString::weight() const {
    size_t total = 0;
    for (size_t w = 0; w < xs_.size(); w++) {
        total += std::popcount(xs_[w] | zs_[w]);
    }
    return total;
}

bool PauliString::commutes(const PauliString &other) const {
    if (other.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("Pauli strings act on different numbers of qubits");
    }
    int parity = 0;
    for (size_t w = 0; w < xs_.size(); w++) {
        parity ^= std::popcount((xs_[w] & other.zs_[w]) ^ (zs_[w] & other.xs_[w])) & 1;
    }
    return parity == 0;
}

PauliString &PauliString::operator*=(const PauliString &other) {
    if (other.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("Pauli strings act on different numbers of qubits");
    }
    for (size_t w = 0; w < xs_.size(); w++) {
        xs_[w] ^= other.xs_[w];
        zs_[w] ^= other.zs_[w];
    }
    return *this;
}

PauliString PauliString::operator*(const PauliString &other) const {
    PauliString out = *this;
    out *= other;
    return out;
}

std::string PauliString::str() const {
    std::string out;
    out.reserve(num_qubits_);
    for (size_t q = 0; q < num_qubits_; q++) {
        out.push_back(at(q) == 'I' ? '_' : at(q));
    }
    return out;
}

void conjugate_in_place(PauliString &p, const CliffordGate &g) {
    size_t a = g.qubit0;
    size_t b = g.qubit1;
    switch (g.kind) {
        case GateKind::H: {
            bool x = p.x(a);
            p.set_x(a, p.z(a));
            p.set_z(a, x);
            break;
        }
        case GateKind::S:
            p.set_z(a, p.z(a) ^ p.x(a));
            break;
        case GateKind::CNOT:
            p.set_x(b, p.x(b) ^ p.x(a));
            p.set_z(a, p.z(a) ^ p.z(b));
            break;
        case GateKind::CZ: {
            bool xa = p.x(a);
            bool xb = p.x(b);
            p.set_z(a, p.z(a) ^ xb);
            p.set_z(b, p.z(b) ^ xa);
            break;
        }
    }
}

Tableau::Tableau(size_t num_qubits)
    : n_(num_qubits),
      words_(word_count(num_qubits)),
      xs_(2 * num_qubits * word_count(num_qubits), 0),
      zs_(2 * num_qubits * word_count(num_qubits), 0),
      signs_(2 * num_qubits, 0) {
    if (num_qubits == 0) {
        throw std::invalid_argument("tableau needs at least one qubit");
    }
    for (size_t q = 0; q < n_; q++) {
        xs_[q * words_ + (q >> 6)] |= uint64_t{1} << (q & 63);
        zs_[(n_ + q) * words_ + (q >> 6)] |= uint64_t{1} << (q & 63);
    }
}

void Tableau::h(size_t q) {
    check_qubit(q, n_);
    size_t w = q >> 6;
    uint64_t bit = uint64_t{1} << (q & 63);
    for (size_t r = 0; r < 2 * n_; r++) {
        uint64_t &x = xs_[r * words_ + w];
        uint64_t &z = zs_[r * words_ + w];
        if ((x & bit) && (z & bit)) signs_[r] ^= 1;
        uint64_t xb = x & bit;
        uint64_t zb = z & bit;
        x = (x & ~bit) | zb;
        z = (z & ~bit) | xb;
    }
}

void Tableau::s(size_t q) {
    check_qubit(q, n_);
    size_t w = q >> 6;
    uint64_t bit = uint64_t{1} << (q & 63);
    for (size_t r = 0; r < 2 * n_; r++) {
        uint64_t x = xs_[r * words_ + w];
        uint64_t &z = zs_[r * words_ + w];
        if ((x & bit) && (z & bit)) signs_[r] ^= 1;
        z ^= x & bit;
    }
}

void Tableau::cnot(size_t control, size_t target) {
    check_qubit(control, n_);
    check_qubit(target, n_);
    if (control == target) {
        throw std::invalid_argument("CNOT needs two distinct qubits");
    }
    for (size_t r = 0; r < 2 * n_; r++) {
        bool xa = row_x(r, control);
        bool za = row_z(r, control);
        bool xb = row_x(r, target);
        bool zb = row_z(r, target);
        if (xa && zb && (xb == za)) signs_[r] ^= 1;
        if (xa) xs_[r * words_ + (target >> 6)] ^= uint64_t{1} << (target & 63);
        if (zb) zs_[r * words_ + (control >> 6)] ^= uint64_t{1} << (control & 63);
    }
}

void Tableau::cz(size_t a, size_t b) {
    h(b);
    cnot(a, b);
    h(b);
}

void Tableau::x(size_t q) {
    check_qubit(q, n_);
    for (size_t r = 0; r < 2 * n_; r++) {
        if (row_z(r, q)) signs_[r] ^= 1;
    }
}

void Tableau::z(size_t q) {
    check_qubit(q, n_);
    for (size_t r = 0; r < 2 * n_; r++) {
        if (row_x(r, q)) signs_[r] ^= 1;
    }
}

void Tableau::apply(const CliffordGate &g) {
    switch (g.kind) {
        case GateKind::H:
            h(g.qubit0);
            break;
        case GateKind::S:
            s(g.qubit0);
            break;
        case GateKind::CNOT:
            cnot(g.qubit0, g.qubit1);
            break;
        case GateKind::CZ:
            cz(g.qubit0, g.qubit1);
            break;
    }
}

bool Tableau::row_anticommutes(size_t row, const PauliString &p) const {
    int parity = 0;
    const uint64_t *rx = &xs_[row * words_];
    const uint64_t *rz = &zs_[row * words_];
    const auto &px = p.x_words();
    const auto &pz = p.z_words();
    for (size_t w = 0; w < words_; w++) {
        parity ^= std::popcount((rx[w] & pz[w]) ^ (rz[w] & px[w])) & 1;
    }
    return parity;
}

bool Tableau::rows_anticommute(size_t a, size_t b) const {
    int parity = 0;
    for (size_t w = 0; w < words_; w++) {
        parity ^= std::popcount((xs_[a * words_ + w] & zs_[b * words_ + w]) ^
                                (zs_[a * words_ + w] & xs_[b * words_ + w])) &
                  1;
    }
    return parity;
}

void Tableau::rowsum(size_t h, size_t i) {
    if (h < n_) {
        // Destabilizer signs carry no information and their products may be non-Hermitian.
        for (size_t w = 0; w < words_; w++) {
            xs_[h * words_ + w] ^= xs_[i * words_ + w];
            zs_[h * words_ + w] ^= zs_[i * words_ + w];
        }
        return;
    }
    multiply_signed(&xs_[i * words_], &zs_[i * words_], signs_[i], &xs_[h * words_], &zs_[h * words_], signs_[h],
                    words_);
}

void Tableau::set_row(size_t row, const PauliString &p, bool sign) {
    for (size_t w = 0; w < words_; w++) {
        xs_[row * words_ + w] = p.x_words()[w];
        zs_[row * words_ + w] = p.z_words()[w];
    }
    signs_[row] = sign;
}

PauliString Tableau::row(size_t r) const {
    PauliString p(n_);
    for (size_t q = 0; q < n_; q++) {
        p.set_x(q, row_x(r, q));
        p.set_z(q, row_z(r, q));
    }
    return p;
}

MeasurementResult Tableau::measure(const PauliString &p, bool outcome_if_random) {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("measured operator has the wrong number of qubits");
    }
    if (p.is_identity()) {
        throw std::invalid_argument("cannot measure the identity");
    }
    size_t pivot = 2 * n_;
    for (size_t r = n_; r < 2 * n_; r++) {
        if (row_anticommutes(r, p)) {
            pivot = r;
            break;
        }
    }
    MeasurementResult result;
    if (pivot == 2 * n_) {
        result.outcome = *peek(p);
        result.deterministic = true;
        return result;
    }
    for (size_t r = 0; r < 2 * n_; r++) {
        if (r != pivot && row_anticommutes(r, p)) {
            rowsum(r, pivot);
        }
    }
    // The old stabilizer becomes the destabilizer of the measured operator.
    for (size_t w = 0; w < words_; w++) {
        xs_[(pivot - n_) * words_ + w] = xs_[pivot * words_ + w];
        zs_[(pivot - n_) * words_ + w] = zs_[pivot * words_ + w];
    }
    signs_[pivot - n_] = signs_[pivot];
    set_row(pivot, p, outcome_if_random);
    result.outcome = outcome_if_random;
    result.destabilizer = row(pivot - n_);
    return result;
}

std::optional<bool> Tableau::peek(const PauliString &p) const {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("measured operator has the wrong number of qubits");
    }
    for (size_t r = n_; r < 2 * n_; r++) {
        if (row_anticommutes(r, p)) return std::nullopt;
    }
    std::vector<uint64_t> ax(words_, 0);
    std::vector<uint64_t> az(words_, 0);
    uint8_t sign = 0;
    for (size_t i = 0; i < n_; i++) {
        if (row_anticommutes(i, p)) {
            multiply_signed(&xs_[(n_ + i) * words_], &zs_[(n_ + i) * words_], signs_[n_ + i], ax.data(), az.data(),
                            sign, words_);
        }
    }
    return sign != 0;
}

bool Tableau::stabilizes_up_to_sign(const PauliString &p) const {
    for (size_t r = n_; r < 2 * n_; r++) {
        if (row_anticommutes(r, p)) return false;
    }
    return true;
}

PauliString Tableau::stabilizer(size_t i) const {
    check_qubit(i, n_);
    return row(n_ + i);
}

PauliString Tableau::destabilizer(size_t i) const {
    check_qubit(i, n_);
    return row(i);
}

bool Tableau::stabilizer_sign(size_t i) const {
    check_qubit(i, n_);
    return signs_[n_ + i];
}

bool Tableau::is_valid() const {
    for (size_t i = 0; i < n_; i++) {
        for (size_t j = 0; j < n_; j++) {
            if (rows_anticommute(n_ + i, n_ + j)) return false;
            if (rows_anticommute(i, j)) return false;
            if (rows_anticommute(i, n_ + j) != (i == j)) return false;
        }
    }
    return true;
}

std::string Tableau::str() const {
    std::string out;
    for (size_t i = 0; i < n_; i++) {
        out += (signs_[n_ + i] ? '-' : '+') + row(n_ + i).str() + "\n";
    }
    return out;
}

}  // namespace dqc3
