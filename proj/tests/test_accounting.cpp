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

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "dense.hpp"
#include "dqc3/accounting.hpp"

using namespace dqc3;

namespace {

double non_identity_weight(const PauliChannel &c) { return 1.0 - c.weight(PauliOperator::identity(c.num_qubits())); }

ProtocolParams params(double p_ent, double p_local, double p_mem, double f, int n, int M, int H) {
    ProtocolParams p;
    p.p_ent = p_ent;
    p.p_local = p_local;
    p.p_mem = p_mem;
    p.f_herald = f;
    p.n_rounds = n;
    p.M = M;
    p.H = H;
    return p;
}

void expect_channels_near(const PauliChannel &a, const PauliChannel &b, double tol) {
    ASSERT_EQ(a.num_qubits(), b.num_qubits());
    for (const auto &[p, w] : a.terms()) EXPECT_NEAR(w, b.weight(p), tol) << p.str();
    for (const auto &[p, w] : b.terms()) EXPECT_NEAR(w, a.weight(p), tol) << p.str();
}

}  // namespace

TEST(Memory, IdentityCases) {
    EXPECT_DOUBLE_EQ(non_identity_weight(memory_channel(0.0, 0.3)), 0.0);
    EXPECT_DOUBLE_EQ(non_identity_weight(memory_channel(123.5, 0.0)), 0.0);
    EXPECT_THROW(memory_channel(-1.0, 0.1), std::invalid_argument);
}

TEST(Memory, HundredStepsMatchComposition) {
    PauliChannel direct = memory_channel(100.0, 1e-4);
    EXPECT_NEAR(non_identity_weight(direct), 0.00995, 1e-5);
    // Composed unit steps depolarize slightly less (X after X cancels), agreeing to O(p^2 t^2).
    PauliChannel composed = PauliChannel::identity(1);
    for (int i = 0; i < 100; i++) composed = compose(composed, depolarizing1(1e-4));
    EXPECT_NEAR(non_identity_weight(composed), non_identity_weight(direct), 2e-3 * non_identity_weight(direct));
}

TEST(Cost, HeraldedAttempts) {
    EXPECT_NEAR(attempts_per_raw_pair(0.9), 10.0, 1e-12);
    EXPECT_DOUBLE_EQ(attempts_per_raw_pair(0.0), 1.0);
    EffectivePP e = effective_pp_noise(params(0.05, 1e-3, 0.0, 0.9, 2, 2, 6));
    EXPECT_NEAR(e.cost.attempts_per_raw_pair, 10.0, 1e-12);
    EXPECT_NEAR(e.cost.expected_eo_attempts, 10.0 * e.cost.expected_raw_pairs, 1e-9);
    // Two pumping rounds need at least three raw pairs.
    EXPECT_GE(e.cost.expected_raw_pairs, 3.0);
}

TEST(Cost, RestartRecursionByEnumeration) {
    // One round with acceptance a: the restart loop consumes 2 pairs per attempt and
    // needs a geometric number of attempts with mean 1/a.
    EffectivePP e = effective_pp_noise(params(0.2, 0.0, 0.0, 0.0, 1, 1, 1));
    double a = e.pumping.round_accept.at(0);
    double expected = 0.0;
    for (int k = 1; k < 4000; k++) expected += 2.0 * k * a * std::pow(1.0 - a, k - 1);
    EXPECT_NEAR(e.cost.expected_raw_pairs, expected, 1e-9);
}

TEST(EffectivePP, Noiseless) {
    EffectivePP e = effective_pp_noise(params(0.0, 0.0, 0.0, 0.9, 2, 3, 7));
    EXPECT_DOUBLE_EQ(e.p_phase, 0.0);
    EXPECT_DOUBLE_EQ(non_identity_weight(e.residual), 0.0);
    EXPECT_DOUBLE_EQ(e.fail_prob, 0.0);
}

TEST(EffectivePP, PurePhaseNoiseOnlyFlipsRecords) {
    ProtocolParams p = params(0.2, 0.0, 0.0, 0.0, 0, 1, 5);
    p.split = {1.0, 0.0, 0.0};
    EffectivePP e = effective_pp_noise(p);
    EXPECT_NEAR(e.p_phase, 0.2, 1e-15);
    EXPECT_NEAR(non_identity_weight(e.residual), 0.0, 1e-15);
}

TEST(EffectivePP, BitNoiseLandsOnClientAsPhase) {
    ProtocolParams p = params(0.1, 0.0, 0.0, 0.0, 0, 1, 5);
    p.split = {0.0, 1.0, 0.0};
    EffectivePP e = effective_pp_noise(p);
    EXPECT_NEAR(e.p_phase, 0.0, 1e-15);
    EXPECT_NEAR(e.residual.weight(PauliOperator::from_string("ZI")), 0.1, 1e-15);
}

TEST(EffectivePP, NoSignalThrows) {
    ProtocolParams p = params(0.6, 0.0, 0.0, 0.0, 0, 1, 5);
    p.split = {1.0, 0.0, 0.0};
    EXPECT_THROW(effective_pp_noise(p), std::domain_error);
}

TEST(EffectivePP, ParamsValidation) {
    EXPECT_THROW(params(1.0, 0, 0, 0, 0, 1, 1).validate(), std::invalid_argument);
    EXPECT_THROW(params(0.1, 0, 0, 0, -1, 1, 1).validate(), std::invalid_argument);
    EXPECT_THROW(params(0.1, 0, 0, 0, 0, 0, 1).validate(), std::invalid_argument);
    EXPECT_THROW(params(0.1, 0, 0, 0, 0, 3, 2).validate(), std::invalid_argument);
    ProtocolParams p = params(0.1, 0, 0, 0, 0, 1, 1);
    p.sync_factor = 0.5;
    EXPECT_THROW(p.validate(), std::invalid_argument);
}

// The application circuit really projects the clients onto Z Z eigenstates, and a Z
// error on an intermediate inverts the record. Checked on dense state vectors.
TEST(ApplicationCircuit, RecordIsClientParity) {
    using oracle::DenseState;
    for (char err : {'I', 'Z', 'X'}) {
        DenseState psi(4);
        // Bell pair on the intermediates, an arbitrary entangled client state.
        psi.apply(CliffordGate::h(0)).apply(CliffordGate::cnot(0, 1));
        psi.apply(CliffordGate::h(2)).apply(CliffordGate::s(2)).apply(CliffordGate::h(3));
        psi.apply(CliffordGate::cnot(2, 3)).apply(CliffordGate::h(2));
        psi.apply(PauliOperator::single(4, 0, err));
        psi.apply(CliffordGate::cz(0, 2)).apply(CliffordGate::cz(1, 3));
        for (int s0 : {1, -1}) {
            for (int s1 : {1, -1}) {
                DenseState branch = psi;
                if (branch.expectation(PauliOperator::single(4, 0, 'X')) == -s0) continue;
                branch.project(PauliOperator::single(4, 0, 'X'), s0);
                if (std::abs(branch.expectation(PauliOperator::single(4, 1, 'X')) + s1) < 1e-12) continue;
                branch.project(PauliOperator::single(4, 1, 'X'), s1);
                double zz = branch.expectation(PauliOperator::from_string("__ZZ"));
                int record = s0 * s1;
                bool flipped = pp_record_flipped(PauliOperator::single(4, 0, err));
                EXPECT_NEAR(zz, flipped ? -record : record, 1e-10) << err;
            }
        }
    }
}

TEST(JointWalk, MatchesScalarWalkWhenFlipsIgnoreClientFrame) {
    for (double p_ent : {0.05, 0.2, 0.35}) {
        ProtocolParams p = params(p_ent, 0.0, 0.0, 0.0, 1, 1, 1);
        EffectivePP e = effective_pp_noise(p);
        PPKernel k = PPKernel::from_circuit(e.circuit, e.intermediate);
        for (int M = 1; M <= 4; M++) {
            JointPPWalk joint = joint_pp_walk(k, M, 14);
            for (int H = M; H <= 14; H++) {
                PPWalkResult w = walk_dp({e.p_phase, M, H});
                const auto &at = joint.at(H);
                EXPECT_NEAR(at.success_prob, w.success_prob, 1e-12);
                EXPECT_NEAR(at.fail_prob, w.fail_prob, 1e-12);
                EXPECT_NEAR(at.expected_pp_count, w.expected_pp_count, 1e-10 * H);
                EXPECT_NEAR(at.outcome.wrong_parity(), w.residual_wrong_parity, 1e-12);
            }
        }
    }
}

TEST(JointWalk, MatchesSequenceEnumeration) {
    ProtocolParams p = params(0.15, 0.02, 0.01, 0.5, 1, 2, 6);
    EffectivePP e = effective_pp_noise(p);
    PPKernel k = PPKernel::from_circuit(e.circuit, e.intermediate);
    const int M = 2, H = 6;
    // Enumerate every sequence of kernel outcomes.
    std::array<double, 32> success{};
    double fail = 0.0, count = 0.0;
    std::function<void(int, int, size_t, double)> walk = [&](int h, int d, size_t frame, double prob) {
        if (d == M || d == -M) {
            success[frame + (d < 0 ? 16 : 0)] += prob;
            count += h * prob;
            return;
        }
        if (h == H) {
            fail += prob;
            count += h * prob;
            return;
        }
        for (const auto &[next, q] : k.next[frame]) walk(h + 1, d + (next >= 16 ? -1 : 1), next & 15, prob * q);
    };
    walk(0, 0, 0, 1.0);
    double total = 0.0;
    for (double s : success) total += s;
    JointPPWalk joint = joint_pp_walk(k, M, H);
    const auto &at = joint.at(H);
    // The kernel weights are only normalized to ~1e-12 per step.
    EXPECT_NEAR(at.success_prob, total, 1e-10);
    EXPECT_NEAR(at.fail_prob, fail, 1e-10);
    EXPECT_NEAR(at.expected_pp_count, count, 1e-8);
    for (size_t i = 0; i < 32; i++) EXPECT_NEAR(at.outcome.joint[i], success[i] / total, 1e-10) << i;
}

TEST(JointWalk, RejectsBadTruncation) {
    PPKernel k = PPKernel::from_circuit(pp_application_circuit(0.0, 0.0), BellDiagonalState{});
    EXPECT_THROW(joint_pp_walk(k, 3, 2), std::invalid_argument);
    JointPPWalk j = joint_pp_walk(k, 2, 5);
    EXPECT_THROW(j.at(6), std::out_of_range);
    EXPECT_THROW(j.at(1), std::out_of_range);
}

TEST(Accumulation, IdentityStaysIdentity) {
    PPWalkResult w = walk_dp({0.0, 2, 4});
    PauliChannel out = client_error_accumulation(w, PauliChannel::identity(2), ProtocolParams{});
    EXPECT_NEAR(non_identity_weight(out), 0.0, 1e-15);
}

TEST(Accumulation, DegenerateWalkComposesExactly) {
    // No record flips: the walk consumes exactly M projections.
    PauliChannel residual(2, {{PauliOperator::from_string("II"), 0.9},
                              {PauliOperator::from_string("XI"), 0.06},
                              {PauliOperator::from_string("ZZ"), 0.04}});
    for (int k = 1; k <= 4; k++) {
        PPWalkResult w = walk_dp({0.0, k, k + 3});
        PauliChannel expected = PauliChannel::identity(2);
        for (int i = 0; i < k; i++) expected = compose(expected, residual);
        expect_channels_near(client_error_accumulation(w, residual, ProtocolParams{}), expected, 1e-14);
    }
}

TEST(Accumulation, WrongParityBecomesZZ) {
    PPWalkResult w = walk_dp({0.2, 1, 1});
    PauliChannel out = client_error_accumulation(w, PauliChannel::identity(2), ProtocolParams{});
    EXPECT_NEAR(out.weight(PauliOperator::from_string("ZZ")), 0.2, 1e-15);
}

// --- Budget model -----------------------------------------------------------------------

namespace {

// Runs the schedule with forced even outcomes, applying `error` right after `step`, and
// reports which cluster-state stabilizers end up with flipped signs.
std::vector<bool> tableau_flips(const BudgetModel &model, const PauliString &error, size_t step) {
    const ConstructionSchedule &s = model.schedule();
    auto run = [&](bool inject) {
        Tableau t(s.num_qubits);
        for (size_t k = 0; k < s.steps.size(); k++) {
            for (const Action &a : s.steps[k].actions) {
                if (a.kind == ActionKind::Prepare) t.h(a.qubits[0]);
                if (a.kind == ActionKind::Projection || a.kind == ActionKind::Measure) {
                    PauliString m(s.num_qubits);
                    for (size_t q : a.qubits) m.set_z(q, true);
                    t.measure(m, false);
                }
                for (const CliffordGate &g : a.gates) t.apply(g);
            }
            if (inject && k == step) {
                for (size_t q = 0; q < s.num_qubits; q++) {
                    if (error.x(q)) t.x(q);
                    if (error.z(q)) t.z(q);
                }
            }
        }
        return t;
    };
    Tableau ideal = run(false);
    Tableau faulty = run(true);
    auto index = s.index();
    auto eq = check_equivalence(ideal, s.target, index);
    EXPECT_TRUE(eq.has_value());
    for (size_t q = 0; q < s.num_qubits; q++) {
        for (const CliffordGate &g : inverse_gates_of(eq->cliffords[q], q)) {
            ideal.apply(g);
            faulty.apply(g);
        }
    }
    std::vector<bool> flips;
    for (const VertexId &v : model.targets()) {
        PauliString k = s.target.stabilizer(v, index, s.num_qubits);
        flips.push_back(*ideal.peek(k) != *faulty.peek(k));
    }
    return flips;
}

BudgetInputs zero_inputs(const BudgetModel &m) {
    BudgetInputs in;
    in.pp.joint[0] = 1.0;
    in.idle_rate.assign(m.schedule().num_steps(), 0.0);
    return in;
}

}  // namespace

TEST(BudgetModel, HitPatternsMatchTableauReplay) {
    std::mt19937_64 rng(7);
    for (const ConstructionSchedule &s : {build_cross(), build_sheet(2, 2, 0), build_tpcs(1, 1, 1)}) {
        BudgetModel model(s);
        std::vector<int> prepared = s.prepared_at();
        std::vector<int> measured = s.measured_at();
        for (int trial = 0; trial < 40; trial++) {
            size_t step = rng() % s.num_steps();
            PauliString e(s.num_qubits);
            for (size_t q = 0; q < s.num_qubits; q++) {
                // Only qubits that exist after `step`.
                if (prepared[q] > int(step) || measured[q] <= int(step)) continue;
                e.set(q, "IXYZ"[rng() % 4]);
            }
            EXPECT_EQ(model.hit_pattern(e, step), tableau_flips(model, e, step)) << "step " << step;
        }
    }
}

TEST(BudgetModel, NoiselessBudgetIsZero) {
    ErrorBudget b = schedule_error_budget(default_budget_model(), params(0, 0, 0, 0.9, 1, 2, 5));
    EXPECT_EQ(b.p_z, 0.0);
    EXPECT_EQ(b.p_zz, 0.0);
    EXPECT_EQ(b.p_loss, 0.0);
    EXPECT_EQ(b.eps, 0.0);
    EXPECT_EQ(b.steps, 7u);
}

TEST(BudgetModel, FailureOnlyGivesLoss) {
    const BudgetModel &m = default_budget_model();
    BudgetInputs in = zero_inputs(m);
    in.pp_fail = 0.01;
    ErrorBudget b = m.evaluate(in);
    EXPECT_EQ(b.eps, 0.0);
    size_t worst = 0;
    for (size_t t = 0; t < m.num_targets(); t++) {
        EXPECT_GE(m.loss_exposure(t), 1u) << m.targets()[t].str();
        worst = std::max(worst, m.loss_exposure(t));
    }
    EXPECT_NEAR(b.p_loss, 1.0 - std::pow(0.99, double(worst)), 1e-15);
}

TEST(BudgetModel, SingleLocationFlipMatchesPattern) {
    // Only one idle step is noisy; each qubit's flip probability then follows from the
    // patterns of the idle qubits in that step (independent locations, XOR of flips).
    BudgetModel m(build_sheet(2, 2, 0));
    const auto &s = m.schedule();
    size_t step = 3;
    double rate = 0.03;
    BudgetInputs in = zero_inputs(m);
    in.idle_rate[step] = rate;
    auto active = s.activity();
    auto prepared = s.prepared_at();
    auto measured = s.measured_at();
    std::vector<double> expect(m.num_targets(), 0.0);
    for (size_t q = 0; q < s.num_qubits; q++) {
        if (!(prepared[q] < int(step) && measured[q] > int(step) && !active[step][q])) continue;
        // The location acts at the start of `step`, i.e. right after step - 1.
        std::array<std::vector<bool>, 3> pats;
        int k = 0;
        for (char c : {'X', 'Y', 'Z'}) pats[k++] = m.hit_pattern(PauliString::single(s.num_qubits, q, c), step - 1);
        for (size_t t = 0; t < m.num_targets(); t++) {
            double q_flip = 0.0;
            for (const auto &p : pats) q_flip += p[t] ? rate / 3 : 0.0;
            expect[t] = expect[t] * (1 - q_flip) + (1 - expect[t]) * q_flip;
        }
    }
    auto got = m.qubit_flip_probabilities(in);
    for (size_t t = 0; t < got.size(); t++) EXPECT_NEAR(got[t], expect[t], 1e-15) << m.targets()[t].str();
}

TEST(BudgetModel, ClassificationConservesWeight) {
    BudgetModel m(build_cross());
    std::mt19937_64 rng(3);
    PauliChannel c = depolarizing2(0.3);
    for (int trial = 0; trial < 5; trial++) {
        size_t a = rng() % 5, b = (a + 1 + rng() % 4) % 5;
        std::map<std::vector<bool>, double> classes;
        for (const auto &[p, w] : c.terms()) {
            PauliString e(m.schedule().num_qubits);
            e.set(a, p.at(0));
            e.set(b, p.at(1));
            classes[m.hit_pattern(e, 2)] += w;
        }
        double total = 0.0;
        for (const auto &[pattern, w] : classes) total += w;
        EXPECT_NEAR(total, c.total_weight(), 1e-12);
    }
}

TEST(BudgetModel, MonotoneInEveryRate) {
    const BudgetModel &m = default_budget_model();
    const std::vector<double> ents = {0.0, 0.03, 0.06, 0.1};
    const std::vector<double> locals = {0.0, 1e-4, 1e-3, 3e-3};
    const std::vector<double> mems = {0.0, 1e-5, 1e-4};
    auto budget = [&](size_t i, size_t j, size_t k) {
        return schedule_error_budget(m, params(ents[i], locals[j], mems[k], 0.9, 1, 2, 6));
    };
    auto check = [](const ErrorBudget &lo, const ErrorBudget &hi) {
        EXPECT_LE(lo.p_z, hi.p_z + 1e-15);
        EXPECT_LE(lo.p_zz, hi.p_zz + 1e-15);
        EXPECT_LE(lo.p_loss, hi.p_loss + 1e-15);
        EXPECT_LE(lo.eps, hi.eps + 1e-15);
    };
    for (size_t i = 0; i < ents.size(); i++) {
        for (size_t j = 0; j < locals.size(); j++) {
            for (size_t k = 0; k < mems.size(); k++) {
                ErrorBudget b = budget(i, j, k);
                if (i + 1 < ents.size()) check(b, budget(i + 1, j, k));
                if (j + 1 < locals.size()) check(b, budget(i, j + 1, k));
                if (k + 1 < mems.size()) check(b, budget(i, j, k + 1));
            }
        }
    }
}

TEST(BudgetModel, SyncFactorIrrelevantWithoutWaitingNoise) {
    ProtocolParams p = params(0.08, 1e-3, 0.0, 0.0, 2, 3, 9);
    ErrorBudget a = schedule_error_budget(default_budget_model(), p);
    p.sync_factor = 4.0;
    ErrorBudget b = schedule_error_budget(default_budget_model(), p);
    EXPECT_EQ(a.p_z, b.p_z);
    EXPECT_EQ(a.p_zz, b.p_zz);
    EXPECT_EQ(a.p_loss, b.p_loss);
    EXPECT_EQ(a.eps, b.eps);
    p.p_mem = 1e-4;
    ErrorBudget c = schedule_error_budget(default_budget_model(), p);
    p.sync_factor = 1.0;
    EXPECT_GT(c.eps, schedule_error_budget(default_budget_model(), p).eps);
}

TEST(BudgetModel, SublatticesReportedSeparately) {
    ErrorBudget b = schedule_error_budget(default_budget_model(), params(0.05, 1e-3, 0, 0, 2, 3, 9));
    EXPECT_EQ(b.eps, std::max(b.face.eps, b.edge.eps));
    EXPECT_EQ(b.p_z, std::max(b.face.p_z, b.edge.p_z));
    EXPECT_GT(b.face.eps, 0.0);
    EXPECT_GT(b.edge.eps, 0.0);
    // Folding: a qubit's flip probability never exceeds its independent plus correlated parts.
    EXPECT_LE(b.face.eps, b.face.p_z + b.face.p_zz + 1e-15);
}

TEST(ErrorBudget, FromRatesAndReport) {
    ErrorBudget b = ErrorBudget::from_rates(0.01, 0.002, 0.05);
    EXPECT_DOUBLE_EQ(b.eps, 0.012);
    EXPECT_EQ(b.face.eps, b.edge.eps);
    EXPECT_THROW(ErrorBudget::from_rates(1.5, 0, 0), std::invalid_argument);
    std::string r = b.report();
    for (const char *key : {"p_z = 0.01\n", "p_zz = 0.002\n", "p_loss = 0.05\n", "expected_eo_attempts = ", "steps = "}) {
        EXPECT_NE(r.find(key), std::string::npos) << key;
    }
}
