/*
 * Copyright 2026 The epimu Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// Serial reference against the OpenMP kernels on the two hot paths: the
// uniform-strategy search (exhaustive on T_0, where no profile exists) and the
// per-tree loop of the counterexample run.

#include "epimu/atli.hpp"
#include "epimu/expcex.hpp"
#include "epimu/logic.hpp"
#include "epimu/xlate.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace epimu;

StateSet labelled(const QuotientSystem& q, const std::string& p)
{
    StateSet s(q.size());
    for (std::size_t x = 0; x < q.size(); ++x)
        if (q.labels[x].count(p))
            s.set(x);
    return s;
}

void synthesize_t0(benchmark::State& state, bool parallel)
{
    const auto n = static_cast<unsigned>(state.range(0));
    auto family = build_family(n);
    auto q = build_quotient(combine_t0(family, 1, 2), RelationProfile::equal_level({"a"}));
    StateSet all(q.size());
    all.set();
    const auto goal = Objective::until(all, labelled(q, "p"));
    AtliOptions opts;
    opts.parallel = parallel;
    for (auto _ : state) {
        auto p = synthesize_profile(q, {"a"}, goal, {q.root}, opts);
        benchmark::DoNotOptimize(p);
    }
}

void experiment(benchmark::State& state, bool parallel)
{
    const auto a = formula_to_jta(parse_mu_formula("mu X. (p | <> X)"));
    ExperimentOptions opts;
    opts.parallel = parallel;
    opts.atl.parallel = parallel;
    for (auto _ : state) {
        auto r = run_experiment(a, opts);
        benchmark::DoNotOptimize(r);
    }
}

} // namespace

BENCHMARK_CAPTURE(synthesize_t0, serial, false)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(synthesize_t0, parallel, true)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(experiment, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(experiment, parallel, true)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
