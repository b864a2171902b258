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

#include "dqc3/validate.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "dqc3/parallel.hpp"

namespace dqc3 {

using namespace pumping_qubits;

PPSampler::PPSampler(const ProtocolParams &params)
    : params_(params),
      effective_(effective_pp_noise(params)),
      raw_(params.raw_pair().error_channel()),
      transfer_(transfer_circuit(params.p_local)),
      round_(pumping_round_circuit(params.p_local,
                                   memory_rate(effective_.cost.intermediate_idle_per_round, params.p_mem))) {}

PauliOperator PPSampler::raw_pair(std::mt19937_64 &rng, TrialRecord &rec, long &raw_used) const {
    long attempts = 1;
    if (params_.f_herald > 0.0) attempts += std::geometric_distribution<long>(1.0 - params_.f_herald)(rng);
    rec.eo_attempts += attempts;
    rec.eo_attempts_sq += double(attempts) * double(attempts);
    rec.raw_pairs++;
    raw_used++;
    return raw_(rng);
}

// A rejected round throws the stored pair away, so the level below is rebuilt from scratch.
PauliOperator PPSampler::purified_pair(int level, std::mt19937_64 &rng, TrialRecord &rec, long &raw_used) const {
    if (level == 0) {
        PauliOperator raw = raw_pair(rng, rec, raw_used).embedded(4, {INTERMEDIATE_1});
        return fold_intermediate_error(transfer_.sample(raw, rng));
    }
    for (;;) {
        PauliOperator stored = purified_pair(level - 1, rng, rec, raw_used).embedded(4, {INTERMEDIATE_1});
        PauliOperator fresh = raw_pair(rng, rec, raw_used).embedded(4, {BROKER_1});
        PauliOperator out = round_.sample(stored * fresh, rng);
        if (pumping_accepts(out)) return fold_intermediate_error(out);
    }
}

TrialRecord PPSampler::sample(std::mt19937_64 &rng) const {
    TrialRecord rec;
    PauliOperator client = PauliOperator::identity(2);
    int d = 0;
    while (rec.pp_count < params_.H) {
        long raw_used = 0;
        PauliOperator pair = purified_pair(params_.n_rounds, rng, rec, raw_used);
        rec.raw_pairs_sq += double(raw_used) * double(raw_used);
        PauliOperator in = pair.embedded(4, {pp_qubits::INTERMEDIATE_1}) *
                           client.embedded(4, {pp_qubits::CLIENT_1, pp_qubits::CLIENT_2});
        PauliOperator out = effective_.circuit.sample(in, rng);
        bool flipped = pp_record_flipped(out);
        client = client_part(out);
        if (rec.pp_count == 0) rec.first_flipped = flipped;
        rec.pp_count++;
        d += flipped ? -1 : 1;
        if (d == params_.M || d == -params_.M) {
            rec.success = true;
            rec.wrong_parity = d < 0;
            break;
        }
    }
    rec.client_frame = PPOutcomeDistribution::pauli_index(client);
    return rec;
}

TrialRecord sample_pp_walk(const ProtocolParams &params, std::mt19937_64 &rng) {
    return PPSampler(params).sample(rng);
}

void SampleConfig::validate() const {
    params.validate();
    if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
}

namespace {

double binomial_se(double f, size_t n) { return n ? std::sqrt(f * (1.0 - f) / double(n)) : 0.0; }

// Standard error of a mean from its sum and sum of squares.
double mean_se(double sum, double sum_sq, double n) {
    if (n < 2) return 0.0;
    double mean = sum / n;
    double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1));
    return std::sqrt(var / n);
}

Observable judge(std::string name, double analytic, double empirical, double se, size_t n, size_t min_n) {
    Observable o{std::move(name), analytic, empirical, se, n, 0.0, n >= min_n, true};
    double diff = empirical - analytic;
    if (se > 0.0) {
        o.z = diff / se;
    } else if (std::abs(diff) > 1e-12) {
        o.z = diff > 0 ? INFINITY : -INFINITY;
    }
    if (o.compared) o.pass = std::abs(o.z) <= 3.0;
    return o;
}

// Two-sided exact binomial tail of observing k of n at rate p: twice the smaller tail.
double binomial_two_sided(size_t k, size_t n, double p) {
    if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
    if (p >= 1.0) return k == n ? 1.0 : 0.0;
    const double lp = std::log(p), lq = std::log1p(-p), ln = std::lgamma(double(n) + 1.0);
    auto pmf = [&](size_t j) {
        return std::exp(ln - std::lgamma(double(j) + 1.0) - std::lgamma(double(n - j) + 1.0) + double(j) * lp +
                        double(n - j) * lq);
    };
    double tail = 0.0;
    if (double(k) >= double(n) * p) {
        for (size_t j = k; j <= n; j++) {
            double t = pmf(j);
            tail += t;
            if (t < 1e-18 * tail) break;
        }
    } else {
        for (size_t j = k + 1; j-- > 0;) {
            double t = pmf(j);
            tail += t;
            if (t < 1e-18 * tail) break;
        }
    }
    return std::min(1.0, 2.0 * tail);
}

// The |z| whose two-sided normal tail equals `tail`.
double equivalent_z(double tail) {
    if (tail >= 1.0) return 0.0;
    if (tail <= 0.0) return INFINITY;
    double lo = 0.0, hi = 40.0;
    for (int i = 0; i < 200; i++) {
        double mid = 0.5 * (lo + hi);
        (std::erfc(mid / std::sqrt(2.0)) > tail ? lo : hi) = mid;
    }
    return lo;
}

// Rare outcomes are far from normal at these sample sizes, so frequencies are judged by
// the exact binomial tail, reported as the equivalent normal z.
Observable judge_frequency(std::string name, double analytic, size_t count, size_t n, size_t min_n) {
    double empirical = n ? double(count) / double(n) : 0.0;
    Observable o{std::move(name), analytic, empirical, binomial_se(empirical, n), n, 0.0, n >= min_n, true};
    if (n == 0) return o;
    double z = equivalent_z(binomial_two_sided(count, n, analytic));
    o.z = empirical < analytic ? -z : z;
    if (o.compared) o.pass = std::abs(o.z) <= 3.0;
    return o;
}

}  // namespace

EmpiricalReport validate(const SampleConfig &config) {
    config.validate();
    const ProtocolParams &params = config.params;
    PPSampler sampler(params);
    PPModel model = pp_model(params, params.H);
    const JointPPWalk::AtH &walk = model.joint.at(params.H);

    std::vector<TrialRecord> trials(config.n_samples);
    parallel_for(trials.size(), thread_count(config.threads), [&](size_t i) {
        std::mt19937_64 rng = trial_rng(config.seed, i);
        trials[i] = sampler.sample(rng);
    });

    // Sequential reduction keeps the floating-point sums order-independent of threads.
    size_t successes = 0, wrong = 0, first_flips = 0;
    std::array<size_t, 16> frames{};
    double pp = 0.0, pp_sq = 0.0, raw = 0.0, raw_sq = 0.0, attempts = 0.0, attempts_sq = 0.0;
    for (const TrialRecord &t : trials) {
        first_flips += t.first_flipped;
        if (t.success) {
            successes++;
            wrong += t.wrong_parity;
            frames[t.client_frame]++;
        }
        pp += t.pp_count;
        pp_sq += double(t.pp_count) * t.pp_count;
        raw += double(t.raw_pairs);
        raw_sq += t.raw_pairs_sq;
        attempts += double(t.eo_attempts);
        attempts_sq += t.eo_attempts_sq;
    }

    EmpiricalReport r;
    const size_t n = trials.size();
    const size_t min_n = config.min_samples;
    r.n_samples = n;
    r.seed = config.seed;
    r.successes = successes;
    r.success_prob = double(successes) / double(n);
    r.success_se = binomial_se(r.success_prob, n);
    r.observables.push_back(judge_frequency("success_prob", walk.success_prob, successes, n, min_n));

    r.observables.push_back(judge_frequency("first_record_flip", model.effective.p_phase, first_flips, n, min_n));

    r.wrong_parity = successes ? double(wrong) / double(successes) : 0.0;
    r.wrong_parity_se = binomial_se(r.wrong_parity, successes);
    r.observables.push_back(
        judge_frequency("wrong_parity", walk.outcome.wrong_parity(), wrong, successes, min_n));

    for (size_t f = 0; f < 16; f++) {
        r.client_freq[f] = successes ? double(frames[f]) / double(successes) : 0.0;
        r.client_se[f] = binomial_se(r.client_freq[f], successes);
        double analytic = walk.outcome.joint[f] + walk.outcome.joint[f + 16];
        r.observables.push_back(judge_frequency("client_" + PPOutcomeDistribution::pauli_at(f).str(), analytic,
                                                frames[f], successes, min_n));
    }

    r.attempts_per_raw_pair = attempts / raw;
    r.attempts_per_raw_pair_se = mean_se(attempts, attempts_sq, raw);
    r.observables.push_back(judge("attempts_per_raw_pair", model.effective.cost.attempts_per_raw_pair,
                                  r.attempts_per_raw_pair, r.attempts_per_raw_pair_se,
                                  size_t(raw), min_n));

    r.raw_pairs_per_pp = raw / pp;
    r.raw_pairs_per_pp_se = mean_se(raw, raw_sq, pp);
    r.observables.push_back(judge("raw_pairs_per_pp", model.effective.cost.expected_raw_pairs, r.raw_pairs_per_pp,
                                  r.raw_pairs_per_pp_se, size_t(pp), min_n));

    r.mean_pp_count = pp / double(n);
    r.mean_pp_count_se = mean_se(pp, pp_sq, double(n));
    r.observables.push_back(judge("pp_count", walk.expected_pp_count, r.mean_pp_count, r.mean_pp_count_se, n,
                                  min_n));
    return r;
}

bool EmpiricalReport::passed() const {
    for (const Observable &o : observables) {
        if (o.compared && !o.pass) return false;
    }
    return true;
}

std::string EmpiricalReport::report() const {
    std::string out;
    char buf[256];
    auto line = [&](const char *key, const char *fmt, auto value) {
        std::snprintf(buf, sizeof buf, fmt, value);
        out += key;
        out += " = ";
        out += buf;
        out += '\n';
    };
    line("n_samples", "%zu", n_samples);
    line("seed", "%llu", (unsigned long long)seed);
    line("successes", "%zu", successes);
    for (const Observable &o : observables) {
        std::string k = o.name;
        line((k + ".analytic").c_str(), "%.10g", o.analytic);
        line((k + ".empirical").c_str(), "%.10g", o.empirical);
        line((k + ".std_error").c_str(), "%.10g", o.std_error);
        line((k + ".n").c_str(), "%zu", o.n);
        line((k + ".z").c_str(), "%.4f", o.z);
        line((k + ".status").c_str(), "%s", !o.compared ? "skipped" : o.pass ? "pass" : "FAIL");
    }
    line("result", "%s", passed() ? "pass" : "FAIL");
    return out;
}

}  // namespace dqc3
