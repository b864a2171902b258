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

#include "dqc3/validate.hpp"

using namespace dqc3;

namespace {

const Observable &find(const EmpiricalReport &r, const std::string &name) {
    for (const Observable &o : r.observables) {
        if (o.name == name) return o;
    }
    throw std::out_of_range(name);
}

SampleConfig headline_regime() {
    SampleConfig c;
    c.params.p_ent = 0.1;
    c.params.p_local = 1e-3;
    c.params.f_herald = 0.9;
    c.params.n_rounds = 2;
    c.params.M = 3;
    c.params.H = 9;
    c.seed = 2026;
    return c;
}

}  // namespace

TEST(Sampler, NoiselessSucceedsOnFirstMProjections) {
    ProtocolParams p;
    p.f_herald = 0.0;
    p.n_rounds = 2;
    p.M = 3;
    p.H = 7;
    PPSampler s(p);
    for (uint64_t i = 0; i < 50; i++) {
        auto rng = trial_rng(7, i);
        TrialRecord t = s.sample(rng);
        EXPECT_TRUE(t.success);
        EXPECT_FALSE(t.wrong_parity);
        EXPECT_EQ(t.client_frame, 0u);
        EXPECT_EQ(t.pp_count, 3);
        EXPECT_EQ(t.raw_pairs, 3 * 3);  // one per level, nothing rejected
        EXPECT_EQ(t.eo_attempts, t.raw_pairs);
    }
}

TEST(Sampler, SingleTrialHelperMatchesSampler) {
    ProtocolParams p = headline_regime().params;
    auto a = trial_rng(3, 5), b = trial_rng(3, 5);
    TrialRecord x = sample_pp_walk(p, a), y = PPSampler(p).sample(b);
    EXPECT_EQ(x.pp_count, y.pp_count);
    EXPECT_EQ(x.client_frame, y.client_frame);
    EXPECT_EQ(x.eo_attempts, y.eo_attempts);
}

TEST(Validate, PhaseOnlyWrongParityMatchesWalk) {
    SampleConfig c;
    c.params.p_ent = 0.2;
    c.params.split = {1.0, 0.0, 0.0};
    c.params.f_herald = 0.0;
    c.params.M = 2;
    c.params.H = 6;
    c.seed = 11;
    EmpiricalReport r = validate(c);
    PPWalkResult walk = walk_dp({0.2, 2, 6});
    const Observable &wrong = find(r, "wrong_parity");
    EXPECT_NEAR(wrong.analytic, walk.residual_wrong_parity, 1e-12);
    EXPECT_LE(std::abs(r.wrong_parity - walk.residual_wrong_parity), 3.0 * r.wrong_parity_se);
    EXPECT_LE(std::abs(r.success_prob - walk.success_prob), 3.0 * r.success_se);
    EXPECT_TRUE(r.passed()) << r.report();
}

TEST(Validate, TenAttemptsPerRawPair) {
    SampleConfig c = headline_regime();
    c.n_samples = 20000;
    EmpiricalReport r = validate(c);
    EXPECT_LE(std::abs(r.attempts_per_raw_pair - 10.0), 3.0 * r.attempts_per_raw_pair_se);
    EXPECT_DOUBLE_EQ(find(r, "attempts_per_raw_pair").analytic, 10.0);
}

TEST(Validate, HeadlineRegimeAllObservablesPass) {
    EmpiricalReport r = validate(headline_regime());
    EXPECT_EQ(r.n_samples, 100000u);
    EXPECT_EQ(r.observables.size(), 3u + 16u + 3u);
    for (const Observable &o : r.observables) {
        EXPECT_TRUE(o.compared) << o.name;
        EXPECT_TRUE(o.pass) << o.name << " z = " << o.z;
    }
}

TEST(Validate, MemoryNoiseAlsoAgrees) {
    SampleConfig c = headline_regime();
    c.params.p_mem = 1e-4;
    c.params.n_rounds = 1;
    c.params.M = 2;
    c.params.H = 6;
    c.n_samples = 50000;
    EmpiricalReport r = validate(c);
    EXPECT_TRUE(r.passed()) << r.report();
}

TEST(Validate, DeterministicAcrossThreadCounts) {
    SampleConfig c = headline_regime();
    c.n_samples = 5000;
    c.threads = 1;
    std::string a = validate(c).report();
    c.threads = 3;
    std::string b = validate(c).report();
    EXPECT_EQ(a, b);
    c.seed++;
    EXPECT_NE(validate(c).report(), a);
}

TEST(Validate, TinyRunsAreReportedButNotJudged) {
    SampleConfig c = headline_regime();
    c.n_samples = 1;
    EmpiricalReport r = validate(c);
    for (const Observable &o : r.observables) {
        EXPECT_FALSE(o.compared) << o.name;
        EXPECT_GE(o.std_error, 0.0);
    }
    EXPECT_TRUE(r.passed());
    EXPECT_NE(r.report().find("success_prob.status = skipped"), std::string::npos);
}

TEST(Validate, ReportIsKeyValue) {
    SampleConfig c = headline_regime();
    c.n_samples = 2000;
    std::string text = validate(c).report();
    EXPECT_EQ(text.rfind("n_samples = 2000\n", 0), 0u);
    EXPECT_NE(text.find("\nresult = "), std::string::npos);
    size_t pos = 0;
    while ((pos = text.find('\n', pos)) != std::string::npos && pos + 1 < text.size()) {
        size_t end = text.find('\n', pos + 1);
        EXPECT_NE(text.substr(pos + 1, end - pos - 1).find(" = "), std::string::npos);
        pos = end;
    }
}

TEST(Validate, RejectsBadConfig) {
    SampleConfig c;
    c.n_samples = 0;
    EXPECT_THROW(validate(c), std::invalid_argument);
    c.n_samples = 10;
    c.params.M = 0;
    EXPECT_THROW(validate(c), std::invalid_argument);
}
