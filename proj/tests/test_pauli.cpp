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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dense.hpp"

using namespace dqc3;
using dqc3::oracle::DensityMatrix;
using dqc3::oracle::DenseState;

namespace {

PauliOperator P(const char *s) { return PauliOperator::from_string(s); }

// Single-qubit product table written out by hand, phase dropped.
char times(char a, char b) {
    if (a == 'I') return b;
    if (b == 'I') return a;
    if (a == b) return 'I';
    for (char c : {'X', 'Y', 'Z'}) {
        if (c != a && c != b) return c;
    }
    return '?';
}

PauliChannel random_channel(size_t n, std::mt19937_64 &rng, int support) {
    std::uniform_int_distribution<uint64_t> mask(0, (uint64_t{1} << n) - 1);
    std::uniform_real_distribution<double> w(0.01, 1.0);
    PauliChannel::Terms terms;
    for (int k = 0; k < support; k++) {
        terms[PauliOperator(n, mask(rng), mask(rng))] += w(rng);
    }
    double total = 0.0;
    for (auto &[p, x] : terms) total += x;
    for (auto &[p, x] : terms) x /= total;
    return PauliChannel(n, terms);
}

std::vector<CliffordGate> all_gates(size_t n) {
    std::vector<CliffordGate> gates;
    for (size_t a = 0; a < n; a++) {
        gates.push_back(CliffordGate::h(a));
        gates.push_back(CliffordGate::s(a));
        for (size_t b = 0; b < n; b++) {
            if (a == b) continue;
            gates.push_back(CliffordGate::cnot(a, b));
            gates.push_back(CliffordGate::cz(a, b));
        }
    }
    return gates;
}

}  // namespace

TEST(PauliOperator, ParseAndPrint) {
    EXPECT_EQ(P("XIZY").str(), "XIZY");
    EXPECT_EQ(P("_X").str(), "IX");
    EXPECT_EQ(P("Y").x_mask(), 1u);
    EXPECT_EQ(P("Y").z_mask(), 1u);
    EXPECT_THROW(P("XQ"), std::invalid_argument);
    EXPECT_THROW(PauliOperator(0, 0, 0), std::invalid_argument);
    EXPECT_THROW(PauliOperator(2, 4, 0), std::invalid_argument);
}

TEST(PauliOperator, ProductMatchesHandTable) {
    const char labels[] = {'I', 'X', 'Y', 'Z'};
    for (char a : labels) {
        for (char b : labels) {
            std::string sa(1, a), sb(1, b);
            EXPECT_EQ((P(sa.c_str()) * P(sb.c_str())).at(0), times(a, b));
        }
    }
}

TEST(PauliOperator, Commutation) {
    EXPECT_TRUE(P("XX").commutes(P("ZZ")));
    EXPECT_FALSE(P("XI").commutes(P("ZI")));
    EXPECT_TRUE(P("XIZ").commutes(P("IYI")));
}

TEST(RawEntanglement, NoiselessIsIdentity) {
    PauliChannel c = raw_entanglement_channel(1, 0, 0, 0);
    EXPECT_EQ(c.size(), 1u);
    EXPECT_DOUBLE_EQ(c.weight(P("II")), 1.0);
}

TEST(RawEntanglement, UniformMixture) {
    PauliChannel c = raw_entanglement_channel(0.25, 0.25, 0.25, 0.25);
    for (const char *s : {"II", "ZI", "XI", "YI"}) {
        EXPECT_DOUBLE_EQ(c.weight(P(s)), 0.25);
    }
}

TEST(RawEntanglement, RejectsBadInput) {
    EXPECT_THROW(raw_entanglement_channel(0.9, 0.2, 0, 0), std::invalid_argument);
    EXPECT_THROW(raw_entanglement_channel(1.1, -0.1, 0, 0), std::invalid_argument);
}

TEST(RawEntanglement, FidelityAgainstDenseOracle) {
    PauliChannel c = raw_entanglement_channel(0.8, 0.1, 0.05, 0.05);
    DensityMatrix rho = DensityMatrix::pure(DenseState::bell(0, 0));
    rho.apply_channel(c, {0, 1});
    EXPECT_NEAR(rho.fidelity(DenseState::bell(0, 0)), 0.8, 1e-12);
}

TEST(RawEntanglement, ErrorPlacementDoesNotChangeBellWeights) {
    PauliChannel c = raw_entanglement_channel(0.7, 0.1, 0.15, 0.05);
    DensityMatrix first = DensityMatrix::pure(DenseState::bell(0, 0));
    first.apply_channel(c, {0, 1});
    DensityMatrix second = DensityMatrix::pure(DenseState::bell(0, 0));
    second.apply_channel(c, {1, 0});
    auto a = oracle::bell_coefficients(first);
    auto b = oracle::bell_coefficients(second);
    for (int k = 0; k < 4; k++) EXPECT_NEAR(a[k], b[k], 1e-12);
}

TEST(Depolarizing, SingleQubitWeights) {
    EXPECT_DOUBLE_EQ(depolarizing1(0).weight(P("I")), 1.0);
    PauliChannel c = depolarizing1(0.3);
    for (const char *s : {"X", "Y", "Z"}) EXPECT_NEAR(c.weight(P(s)), 0.1, 1e-15);
    EXPECT_THROW(depolarizing1(1.5), std::invalid_argument);
    EXPECT_THROW(depolarizing1(-0.1), std::invalid_argument);
}

TEST(Depolarizing, SelfCompositionByExhaustiveTable) {
    // Oracle: enumerate the 4x4 product table directly.
    const double w[4] = {0.7, 0.1, 0.1, 0.1};
    const char labels[] = {'I', 'X', 'Y', 'Z'};
    double identity_weight = 0.0;
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            if (times(labels[i], labels[j]) == 'I') identity_weight += w[i] * w[j];
        }
    }
    EXPECT_NEAR(identity_weight, 0.52, 1e-15);
    PauliChannel c = compose(depolarizing1(0.3), depolarizing1(0.3));
    EXPECT_NEAR(c.weight(P("I")), identity_weight, 1e-15);
}

TEST(Depolarizing, TwoQubitWeights) {
    EXPECT_DOUBLE_EQ(depolarizing2(0).weight(P("II")), 1.0);
    PauliChannel c = depolarizing2(0.15);
    EXPECT_EQ(c.size(), 16u);
    for (const auto &[p, w] : c.terms()) {
        if (!p.is_identity()) {
            EXPECT_NEAR(w, 0.01, 1e-15);
        }
    }
    EXPECT_THROW(depolarizing2(2.0), std::invalid_argument);
}

TEST(Depolarizing, TwoQubitMarginal) {
    double p = 0.15;
    PauliChannel c = depolarizing2(p);
    double non_identity = 0.0;
    for (const auto &[op, w] : c.terms()) {
        if (op.at(0) != 'I') non_identity += w;
    }
    EXPECT_NEAR(non_identity, 12.0 / 15.0 * p, 1e-15);
    PauliChannel m = c.marginal({0});
    PauliChannel expect = depolarizing1(12.0 / 15.0 * p);
    for (const char *s : {"I", "X", "Y", "Z"}) EXPECT_NEAR(m.weight(P(s)), expect.weight(P(s)), 1e-15);
}

TEST(Compose, IdentityAndInvolution) {
    PauliChannel c = depolarizing2(0.2);
    PauliChannel same = compose(PauliChannel::identity(2), c);
    for (const auto &[p, w] : c.terms()) EXPECT_NEAR(same.weight(p), w, 1e-15);
    PauliChannel zz = compose(PauliChannel::deterministic(P("Z")), PauliChannel::deterministic(P("Z")));
    EXPECT_DOUBLE_EQ(zz.weight(P("I")), 1.0);
    EXPECT_THROW(compose(depolarizing1(0.1), depolarizing2(0.1)), std::invalid_argument);
}

TEST(Conjugate, TextbookRules) {
    EXPECT_EQ(conjugate(P("XI"), CliffordGate::cnot(0, 1)), P("XX"));
    EXPECT_EQ(conjugate(P("IZ"), CliffordGate::cnot(0, 1)), P("ZZ"));
    EXPECT_EQ(conjugate(P("Z"), CliffordGate::h(0)), P("X"));
    EXPECT_EQ(conjugate(P("X"), CliffordGate::s(0)), P("Y"));
    EXPECT_EQ(conjugate(P("XI"), CliffordGate::cz(0, 1)), P("XZ"));
    EXPECT_THROW(conjugate(P("XI"), CliffordGate::cz(0, 2)), std::out_of_range);
}

TEST(Conjugate, AgreesWithDenseOracleOnThreeQubits) {
    for (size_t n = 1; n <= 3; n++) {
        for (const CliffordGate &g : all_gates(n)) {
            auto u = oracle::gate_matrix(g, n);
            auto ud = oracle::adjoint(u);
            for (uint64_t x = 0; x < (uint64_t{1} << n); x++) {
                for (uint64_t z = 0; z < (uint64_t{1} << n); z++) {
                    PauliOperator p(n, x, z);
                    auto lhs = oracle::multiply(oracle::multiply(u, oracle::pauli_matrix(p)), ud);
                    auto rhs = oracle::pauli_matrix(conjugate(p, g));
                    EXPECT_TRUE(oracle::equal_up_to_phase(lhs, rhs)) << g.str() << " on " << p.str();
                }
            }
        }
    }
}

TEST(ChannelProperties, RandomSequencesStayNormalized) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; trial++) {
        size_t n = 1 + trial % 3;
        PauliChannel c = random_channel(n, rng, 5);
        auto gates = all_gates(n);
        for (int step = 0; step < 12; step++) {
            if (step % 3 == 2) {
                c = compose(c, random_channel(n, rng, 3));
            } else {
                size_t before = c.size();
                c = conjugate(c, gates[rng() % gates.size()]);
                EXPECT_EQ(c.size(), before);
            }
            EXPECT_NEAR(c.total_weight(), 1.0, 1e-12);
        }
    }
}

TEST(ChannelProperties, ComposeIsAssociativeAndCommutative) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; trial++) {
        size_t n = 1 + trial % 3;
        PauliChannel a = random_channel(n, rng, 4);
        PauliChannel b = random_channel(n, rng, 4);
        PauliChannel c = random_channel(n, rng, 4);
        PauliChannel ab = compose(a, b);
        PauliChannel ba = compose(b, a);
        PauliChannel left = compose(ab, c);
        PauliChannel right = compose(a, compose(b, c));
        for (const auto &[p, w] : ab.terms()) EXPECT_NEAR(ba.weight(p), w, 1e-14);
        for (const auto &[p, w] : left.terms()) EXPECT_NEAR(right.weight(p), w, 1e-14);
    }
}

TEST(DenseOracle, BasicApplications) {
    DenseState s(1);
    DenseState same = s;
    same.apply(P("I"));
    EXPECT_NEAR(std::abs(s.overlap(same)), 1.0, 1e-12);
    s.apply_x(0);
    EXPECT_NEAR(std::norm(s.amplitudes()[1]), 1.0, 1e-12);
    EXPECT_THROW(DenseState(13), std::invalid_argument);
}

TEST(DenseOracle, HadamardThenCnotMakesBellPair) {
    DenseState s(2);
    s.apply(CliffordGate::h(0)).apply(CliffordGate::cnot(0, 1));
    EXPECT_NEAR(std::abs(s.overlap(DenseState::bell(0, 0))), 1.0, 1e-12);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-10);
}
