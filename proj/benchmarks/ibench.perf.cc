// Copyright 2026 The ibench Authors
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


#include <benchmark/benchmark.h>

#include "ibench/engine.h"
#include "ibench/fit.h"
#include "ibench/groups.h"
#include "ibench/noise.h"
#include "ibench/protocols.h"
#include "ibench/rng.h"

using namespace ibench;

namespace {

ErrorModel coherent_z() {
    ErrorModel m;
    FixedCoherent k;
    k.theta2 = 10 * M_PI / 180;
    k.theta1 = 1 * M_PI / 180;
    m.kind = k;
    m.angle_convention = AngleConvention::Half;
    m.placement = ErrorPlacement::Compiled;
    return m;
}

}  // namespace

static void BM_sample_clifford2(benchmark::State &state) {
    RandomStream rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_clifford2(rng));
    }
}
BENCHMARK(BM_sample_clifford2);

static void BM_sample_haar_su4(benchmark::State &state) {
    RandomStream rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_haar_su4(rng));
    }
}
BENCHMARK(BM_sample_haar_su4);

static void BM_ptm_compose_4q(benchmark::State &state) {
    RandomStream rng(2);
    auto a = unitary_to_ptm(sample_haar_su4(rng));
    auto b = unitary_to_ptm(sample_haar_su4(rng));
    for (auto _ : state) {
        benchmark::DoNotOptimize(compose(a, b));
    }
}
BENCHMARK(BM_ptm_compose_4q);

static void BM_simulate_circuit(benchmark::State &state) {
    ProtocolSpec spec;
    spec.group = static_cast<TwirlGroupKind>(state.range(0));
    spec.depths = {static_cast<int>(state.range(1))};
    spec.shots = 1;
    spec.seed = 7;
    auto circ = build_circuit(spec, spec.depths[0], 0);
    auto model = coherent_z();
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_circuit(circ, model));
    }
    state.SetLabel(to_string(spec.group));
}
BENCHMARK(BM_simulate_circuit)
    ->Args({static_cast<int>(TwirlGroupKind::Clifford2), 16})
    ->Args({static_cast<int>(TwirlGroupKind::Haar), 16})
    ->Args({static_cast<int>(TwirlGroupKind::Pauli), 16});

static void BM_fit_decay(benchmark::State &state) {
    std::vector<DecayPoint> pts;
    for (int m : {1, 2, 4, 8, 16, 32, 64}) {
        pts.push_back({m, "survival", 0.75 * std::pow(0.98, m) + 0.25, 0.01, 100});
    }
    FitOptions opts;
    opts.fix_asymptote = true;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_decay(pts, FitModel::ApB, opts));
    }
}
BENCHMARK(BM_fit_decay);

BENCHMARK_MAIN();
