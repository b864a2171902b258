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

// Hot paths of the threshold search, plus the sampler and the tableau replay.

#include <benchmark/benchmark.h>

#include "dqc3/accounting.hpp"
#include "dqc3/schedule.hpp"
#include "dqc3/threshold.hpp"
#include "dqc3/validate.hpp"

using namespace dqc3;

namespace {

ProtocolParams headline_params() {
    ProtocolParams p;
    p.p_ent = 0.1;
    p.p_local = 1e-3;
    p.f_herald = 0.9;
    p.n_rounds = 2;
    p.M = 3;
    p.H = 9;
    return p;
}

}  // namespace

static void BM_WalkDP(benchmark::State &state) {
    int H = int(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(walk_dp({0.1, 5, H}));
}
BENCHMARK(BM_WalkDP)->Arg(9)->Arg(25);

static void BM_PumpSchedule(benchmark::State &state) {
    BellDiagonalState raw = uniform_raw_pair(0.1);
    for (auto _ : state) benchmark::DoNotOptimize(pump_schedule(raw, int(state.range(0)), 1e-3, 1e-4));
}
BENCHMARK(BM_PumpSchedule)->Arg(1)->Arg(4);

static void BM_PPModel(benchmark::State &state) {
    ProtocolParams p = headline_params();
    for (auto _ : state) benchmark::DoNotOptimize(pp_model(p, 25));
}
BENCHMARK(BM_PPModel);

static void BM_BudgetEvaluate(benchmark::State &state) {
    const BudgetModel &model = default_budget_model();
    ProtocolParams p = headline_params();
    PPModel pp = pp_model(p, p.H);
    for (auto _ : state) benchmark::DoNotOptimize(schedule_error_budget(model, p, pp));
}
BENCHMARK(BM_BudgetEvaluate);

static void BM_OptimizeParams(benchmark::State &state) {
    default_budget_model();
    for (auto _ : state) benchmark::DoNotOptimize(optimize_params(0.05, 1e-4, 0.0, 0.9));
}
BENCHMARK(BM_OptimizeParams)->Unit(benchmark::kMillisecond);

static void BM_ExecuteLattice(benchmark::State &state) {
    ConstructionSchedule s = build_tpcs(2, 2, int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(execute(s));
    state.counters["qubits"] = double(s.num_qubits);
}
BENCHMARK(BM_ExecuteLattice)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_SampleTrials(benchmark::State &state) {
    PPSampler sampler(headline_params());
    uint64_t i = 0;
    for (auto _ : state) {
        auto rng = trial_rng(1, i++);
        benchmark::DoNotOptimize(sampler.sample(rng));
    }
    state.SetItemsProcessed(int64_t(state.iterations()));
}
BENCHMARK(BM_SampleTrials);

BENCHMARK_MAIN();
