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

#include "dqc3/purification.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "dense.hpp"
#include "walk_oracle.hpp"

using namespace dqc3;

namespace {

std::vector<double> coeffs(const BellDiagonalState &s) { return {s.a, s.b, s.c, s.d}; }

void expect_matches_dense(const BellDiagonalState &target, const BellDiagonalState &raw, double p_local,
                          double idle = 0.0) {
    PumpingResult r = pump_bit_error(target, raw, p_local, idle);
    auto dense = oracle::dense_pumping_round(coeffs(target), coeffs(raw), p_local, idle);
    EXPECT_NEAR(r.accept_prob, dense.accept_prob, 1e-10);
    auto got = coeffs(r.state);
    for (int k = 0; k < 4; k++) EXPECT_NEAR(got[k], dense.coefficients[k], 1e-10) << "coefficient " << k;
}

}  // namespace

TEST(BellDiagonal, Validation) {
    EXPECT_NO_THROW((BellDiagonalState{0.7, 0.1, 0.1, 0.1}.validate()));
    EXPECT_THROW((BellDiagonalState{0.7, 0.1, 0.1, 0.2}.validate()), std::invalid_argument);
    EXPECT_THROW((BellDiagonalState{1.1, -0.1, 0, 0}.validate()), std::invalid_argument);
}

TEST(Pumping, NoiselessFixedPoint) {
    PumpingResult r = pump_bit_error({1, 0, 0, 0}, {1, 0, 0, 0}, 0.0);
    EXPECT_DOUBLE_EQ(r.accept_prob, 1.0);
    EXPECT_DOUBLE_EQ(r.state.a, 1.0);
}

TEST(Pumping, EvenBitMixtureIsAFixedPoint) {
    // A 50/50 bit-flip mixture carries no parity information: the dense simulation keeps
    // the bit error at exactly 1/2 while rejecting half the rounds.
    BellDiagonalState s{0.5, 0, 0.5, 0};
    PumpingResult r = pump_bit_error(s, s, 0.0);
    EXPECT_NEAR(r.state.bit_error(), 0.5, 1e-15);
    EXPECT_NEAR(r.accept_prob, 0.5, 1e-15);
    expect_matches_dense(s, s, 0.0);
}

TEST(Pumping, SuppressesBitErrors) {
    BellDiagonalState s{0.6, 0, 0.4, 0};
    PumpingResult r = pump_bit_error(s, s, 0.0);
    EXPECT_LT(r.state.bit_error(), 0.4);
    EXPECT_LT(r.accept_prob, 1.0);
    expect_matches_dense(s, s, 0.0);
}

TEST(Pumping, PhaseErrorsPassAndGrow) {
    BellDiagonalState s{0.9, 0.1, 0, 0};
    PumpingResult r = pump_bit_error(s, s, 0.0);
    EXPECT_NEAR(r.accept_prob, 1.0, 1e-15);
    EXPECT_GT(r.state.b, 0.1);
    // Z on the raw broker kicks back onto the intermediate: b' = 2 * 0.9 * 0.1.
    EXPECT_NEAR(r.state.b, 0.18, 1e-15);
    expect_matches_dense(s, s, 0.0);
}

TEST(Pumping, MatchesDenseOracleWithLocalNoise) {
    expect_matches_dense({0.8, 0.1, 0.05, 0.05}, {0.85, 0.05, 0.05, 0.05}, 1e-2);
    expect_matches_dense({0.6, 0.1, 0.2, 0.1}, {0.7, 0.2, 0.05, 0.05}, 1e-3, 2e-3);
}

TEST(Pumping, NeverIncreasesBitErrorWithoutLocalNoise) {
    const int n = 6;
    for (int i = 0; i <= n; i++) {
        for (int j = 0; i + j <= n; j++) {
            for (int k = 0; i + j + k <= n; k++) {
                BellDiagonalState s{i / double(n), j / double(n), k / double(n), (n - i - j - k) / double(n)};
                if (s.a == 0.0 && s.b == 0.0) continue;  // nothing passes the parity check
                for (BellDiagonalState raw : {BellDiagonalState{0.9, 0.05, 0.03, 0.02}, s}) {
                    if (raw.a + raw.b == 0.0) continue;
                    PumpingResult r = pump_bit_error(s, raw, 0.0);
                    auto dense = oracle::dense_pumping_round(coeffs(s), coeffs(raw), 0.0);
                    EXPECT_NEAR(r.state.bit_error(), dense.coefficients[2] + dense.coefficients[3], 1e-10);
                    // Bit error can only drop while both pairs are on the informative side.
                    if (raw.bit_error() <= 0.5 && s.bit_error() <= 0.5) {
                        EXPECT_LE(r.state.bit_error(), s.bit_error() + 1e-12);
                    }
                }
            }
        }
    }
}

TEST(Pumping, PurePhaseNoiseAlwaysAccepted) {
    for (double b : {0.0, 0.1, 0.3, 0.5}) {
        BellDiagonalState s{1 - b, b, 0, 0};
        EXPECT_NEAR(pump_bit_error(s, s, 0.0).accept_prob, 1.0, 1e-15);
    }
}

TEST(PumpSchedule, ZeroRoundsReturnsRawPair) {
    PumpingResult r = pump_schedule({1, 0, 0, 0}, 0, 0.0);
    EXPECT_DOUBLE_EQ(r.state.a, 1.0);
    EXPECT_EQ(r.rounds_used, 0);
    EXPECT_EQ(r.elementary_steps, 1);
    PumpingResult noisy = pump_schedule({0.7, 0.1, 0.1, 0.1}, 0, 0.0);
    EXPECT_NEAR(noisy.state.a, 0.7, 1e-15);
}

TEST(PumpSchedule, TransferPaysOneGatePerNode) {
    double p = 0.01;
    PumpingResult r = pump_schedule({1, 0, 0, 0}, 0, p);
    // Each node's gate leaves a depolarizing marginal of rate 12p/15 on its intermediate.
    double q = 12.0 / 15.0 * p;
    double flip_one = 2.0 * q / 3.0;  // X or Y part on one side
    EXPECT_NEAR(r.state.bit_error(), 2 * flip_one * (1 - flip_one), 1e-15);
}

TEST(PumpSchedule, IsIteratedPumping) {
    BellDiagonalState raw{0.85, 0.05, 0.06, 0.04};
    double p = 3e-3;
    PumpingResult two = pump_schedule(raw, 2, p);
    PumpingResult start = pump_schedule(raw, 0, p);
    PumpingResult one = pump_bit_error(start.state, raw, p);
    PumpingResult again = pump_bit_error(one.state, raw, p);
    EXPECT_NEAR(two.state.a, again.state.a, 1e-15);
    EXPECT_NEAR(two.state.c, again.state.c, 1e-15);
    EXPECT_NEAR(two.accept_prob, start.accept_prob * one.accept_prob * again.accept_prob, 1e-15);
    EXPECT_EQ(two.rounds_used, 2);
    EXPECT_EQ(two.elementary_steps, 5);
    EXPECT_THROW(pump_schedule(raw, -1, p), std::invalid_argument);
}

TEST(PumpSchedule, OneRoundRegressionFixture) {
    // Frozen from the 4-qubit dense simulation: 0.01 / 0.82.
    BellDiagonalState raw{0.9, 0.0, 0.1, 0.0};
    auto dense = oracle::dense_pumping_round(coeffs(raw), coeffs(raw), 0.0);
    EXPECT_NEAR(dense.coefficients[2], 0.01 / 0.82, 1e-12);
    PumpingResult r = pump_schedule(raw, 1, 0.0);
    EXPECT_NEAR(r.state.c, 0.01 / 0.82, 1e-12);
    EXPECT_LT(r.state.c, 0.02);
    EXPECT_NEAR(r.accept_prob, 0.82, 1e-12);
}

TEST(WalkFormulas, NoInformationAtZero) {
    EXPECT_DOUBLE_EQ(wrong_parity_probability(0.2, 0), 0.5);
    EXPECT_DOUBLE_EQ(step_probability(0.2, 0), 0.5);
}

TEST(WalkFormulas, WorkedValues) {
    EXPECT_NEAR(wrong_parity_probability(0.2, 2), 1.0 / 17.0, 1e-15);
    EXPECT_NEAR(step_probability(0.2, 1), 0.68, 1e-15);
}

TEST(WalkFormulas, MatchBayesianEnumeration) {
    for (double p : {0.05, 0.1, 0.2, 0.3, 0.4}) {
        for (int h = 1; h <= 10; h++) {
            auto table = walk_oracle::bayesian_posteriors(p, h);
            for (const auto &[m, post] : table) {
                EXPECT_NEAR(wrong_parity_probability(p, m), post.wrong, 1e-12);
                EXPECT_NEAR(step_probability(p, m), post.agree_next, 1e-12);
            }
        }
    }
}

TEST(WalkFormulas, AlgebraicIdentityAndLimits) {
    for (double p : {0.01, 0.1, 0.25, 0.45}) {
        double alpha = std::sqrt(1.0 / p - 1.0);
        double prev = 1.0;
        for (int m = 0; m <= 30; m++) {
            double pp = wrong_parity_probability(p, m);
            double lhs = pp * (std::pow(alpha, m) + std::pow(alpha, -m));
            EXPECT_NEAR(lhs / std::pow(alpha, -m), 1.0, 1e-12);
            EXPECT_LE(pp, prev);
            prev = pp;
        }
        EXPECT_LT(wrong_parity_probability(p, 400), 1e-12);
        EXPECT_NEAR(step_probability(p, 400), 1 - p, 1e-12);
    }
}

TEST(WalkFormulas, RejectsUninformativeRecords) {
    EXPECT_THROW(wrong_parity_probability(0.5, 1), std::domain_error);
    EXPECT_THROW(step_probability(0.7, 1), std::domain_error);
    EXPECT_THROW(wrong_parity_probability(0.2, -1), std::invalid_argument);
}

TEST(WalkDp, SingleProjection) {
    PPWalkResult r = walk_dp({0.3, 1, 1});
    EXPECT_DOUBLE_EQ(r.success_prob, 1.0);
    EXPECT_DOUBLE_EQ(r.residual_wrong_parity, wrong_parity_probability(0.3, 1));
    EXPECT_DOUBLE_EQ(r.expected_pp_count, 1.0);
}

TEST(WalkDp, TwoStepWorkedExample) {
    PPWalkResult r = walk_dp({0.2, 2, 2});
    EXPECT_NEAR(r.success_prob, 0.68, 1e-15);
    EXPECT_NEAR(r.residual_wrong_parity, 1.0 / 17.0, 1e-15);
    EXPECT_NEAR(r.fail_prob, 0.32, 1e-15);
}

TEST(WalkDp, MatchesSequenceEnumeration) {
    for (double p : {0.05, 0.1, 0.2, 0.3, 0.4}) {
        for (int big_h = 1; big_h <= 12; big_h++) {
            for (int big_m = 1; big_m <= big_h; big_m++) {
                PPWalkResult r = walk_dp({p, big_m, big_h});
                auto brute = walk_oracle::enumerate_walk(p, big_m, big_h);
                EXPECT_NEAR(r.success_prob, brute.success, 1e-12);
                EXPECT_NEAR(r.fail_prob, brute.fail, 1e-12);
                EXPECT_NEAR(r.expected_pp_count, brute.expected_count, 1e-10 * big_h);
                if (brute.success > 0) {
                    EXPECT_NEAR(r.residual_wrong_parity, brute.wrong_given_success, 1e-12);
                }
                ASSERT_EQ(r.terminal_distribution.size(), brute.terminal.size());
                for (const auto &[key, w] : brute.terminal) {
                    EXPECT_NEAR(r.terminal_distribution.at(key), w, 1e-12);
                }
            }
        }
    }
}

TEST(WalkDp, Invariants) {
    for (double p : {0.02, 0.1, 0.25, 0.4}) {
        for (int big_m = 1; big_m <= 6; big_m++) {
            double prev = -1.0;
            for (int big_h = big_m; big_h <= 20; big_h++) {
                PPWalkResult r = walk_dp({p, big_m, big_h});
                double total = 0.0;
                for (const auto &[key, w] : r.terminal_distribution) total += w;
                EXPECT_NEAR(total, 1.0, 1e-12);
                EXPECT_NEAR(r.success_prob + r.fail_prob, 1.0, 1e-12);
                EXPECT_GE(r.success_prob, prev - 1e-15);
                EXPECT_LE(r.residual_wrong_parity, wrong_parity_probability(p, big_m) + 1e-15);
                prev = r.success_prob;
                if (big_m > 1) {
                    EXPECT_LE(r.success_prob, walk_dp({p, big_m - 1, big_h}).success_prob + 1e-15);
                }
            }
        }
    }
}

TEST(WalkDp, NoiselessRecordsNeedExactlyM) {
    PPWalkResult r = walk_dp({0.0, 4, 9});
    EXPECT_DOUBLE_EQ(r.success_prob, 1.0);
    EXPECT_DOUBLE_EQ(r.expected_pp_count, 4.0);
    EXPECT_DOUBLE_EQ(r.residual_wrong_parity, 0.0);
}

TEST(WalkDp, RejectsBadParams) {
    EXPECT_THROW(walk_dp({0.2, 0, 3}), std::invalid_argument);
    EXPECT_THROW(walk_dp({0.2, 4, 3}), std::invalid_argument);
    EXPECT_THROW(walk_dp({0.5, 1, 3}), std::domain_error);
}
