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

// Pauli-frame Monte Carlo of one client-pair parity projection, used to check the
// analytic walk and channel results.

#ifndef DQC3_VALIDATE_HPP
#define DQC3_VALIDATE_HPP

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dqc3/accounting.hpp"

namespace dqc3 {

/// One sampled purified PP of a client pair.
struct TrialRecord {
    bool success = false;
    bool wrong_parity = false;   // accepted parity is the wrong one (only meaningful on success)
    size_t client_frame = 0;     // PPOutcomeDistribution::pauli_index of the final client error
    int pp_count = 0;            // effective PPs consumed
    long raw_pairs = 0;          // raw pairs delivered, including discarded ones
    long eo_attempts = 0;        // EO attempts, including heralded failures
    double raw_pairs_sq = 0.0;   // sum over effective PPs of (raw pairs used)^2
    double eo_attempts_sq = 0.0;  // sum over raw pairs of (attempts used)^2
    bool first_flipped = false;  // record of the first effective PP was flipped
};

/// Draws trials of the full process: heralded EO retries, transfer and pumping with
/// restarts on rejection, the application circuit and the majority walk. Built once per
/// parameter set; the circuits are the ones the analytic path propagates.
class PPSampler {
   public:
    explicit PPSampler(const ProtocolParams &params);

    const ProtocolParams &params() const { return params_; }
    const EffectivePP &effective() const { return effective_; }

    TrialRecord sample(std::mt19937_64 &rng) const;

   private:
    PauliOperator purified_pair(int level, std::mt19937_64 &rng, TrialRecord &rec, long &raw_used) const;
    PauliOperator raw_pair(std::mt19937_64 &rng, TrialRecord &rec, long &raw_used) const;

    ProtocolParams params_;
    EffectivePP effective_;
    PauliSampler raw_;
    NoisyCircuit transfer_;
    NoisyCircuit round_;
};

/// Convenience for a single trial; prefer PPSampler when drawing many.
TrialRecord sample_pp_walk(const ProtocolParams &params, std::mt19937_64 &rng);

struct SampleConfig {
    ProtocolParams params;
    size_t n_samples = 100000;
    uint64_t seed = 1;
    /// Comparisons on fewer than this many relevant trials are reported but not judged.
    size_t min_samples = 100;
    unsigned threads = 0;

    void validate() const;
};

/// One analytic-vs-empirical comparison.
struct Observable {
    std::string name;
    double analytic = 0.0;
    double empirical = 0.0;
    double std_error = 0.0;  // of the empirical value
    size_t n = 0;            // trials the empirical value is averaged over
    double z = 0.0;          // signed; frequencies use the exact binomial tail as an equivalent z
    bool compared = false;   // false below the minimum-n guard
    bool pass = true;
};

struct EmpiricalReport {
    size_t n_samples = 0;
    uint64_t seed = 0;
    size_t successes = 0;
    double success_prob = 0.0;
    double success_se = 0.0;
    double wrong_parity = 0.0;  // among successes
    double wrong_parity_se = 0.0;
    std::array<double, 16> client_freq{};  // among successes
    std::array<double, 16> client_se{};
    double attempts_per_raw_pair = 0.0;
    double attempts_per_raw_pair_se = 0.0;
    double raw_pairs_per_pp = 0.0;
    double raw_pairs_per_pp_se = 0.0;
    double mean_pp_count = 0.0;
    double mean_pp_count_se = 0.0;
    std::vector<Observable> observables;

    /// True iff every judged observable has |z| <= 3.
    bool passed() const;
    /// Plain-text key = value lines.
    std::string report() const;
};

/// Runs config.n_samples independent trials (trial i uses trial_rng(seed, i)) and
/// compares against pp_model. Deterministic for a given config, independent of threads.
EmpiricalReport validate(const SampleConfig &config);

}  // namespace dqc3

#endif  // DQC3_VALIDATE_HPP
