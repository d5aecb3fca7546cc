// Copyright 2026 The gmdlab Authors
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


// Serial reference kernels against their OpenMP versions. Both variants of
// each pair compute identical results; only the schedule differs.

#include <benchmark/benchmark.h>

#include <vector>

#include "gmdlab/approx.h"
#include "gmdlab/core.h"
#include "gmdlab/exact.h"
#include "gmdlab/gaussmath.h"
#include "gmdlab/rng.h"
#include "gmdlab/sasol.h"

namespace gmdlab {
namespace {

GmdInstance BenchGmd(int n, int T, uint64_t seed) {
  CounterRng rng(seed);
  std::vector<GmdEdge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v || rng.Uniform01() >= 0.3) continue;
      edges.push_back({u, v, 1 + static_cast<int>(rng.UniformInt(T)),
                       Rational(1 + static_cast<long>(rng.UniformInt(4)))});
    }
  }
  return GmdInstance(T, n, std::move(edges)).Normalized();
}

GpInstance BenchGp(int n, uint64_t seed) {
  CounterRng rng(seed);
  std::vector<GpEdge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.Uniform01() >= 0.4) continue;
      edges.push_back({u, v, Rational(1 + static_cast<long>(rng.UniformInt(3))), Rational(1)});
    }
  }
  return GpInstance(n, std::move(edges));
}

template <bool kSerial>
void BM_OptGmd(benchmark::State& state) {
  GmdInstance inst = BenchGmd(static_cast<int>(state.range(0)), 2, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kSerial ? OptGmdSerial(inst) : OptGmd(inst));
  }
}
BENCHMARK(BM_OptGmd<true>)->Name("OptGmd/serial")->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OptGmd<false>)->Name("OptGmd/parallel")->Arg(14)->Unit(benchmark::kMillisecond);

template <bool kSerial>
void BM_OptGpGrid(benchmark::State& state) {
  GpInstance inst = BenchGp(static_cast<int>(state.range(0)), 2);
  auto grid = HalfIntegralGrid(inst);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kSerial ? OptGpGridSerial(inst, grid) : OptGpGrid(inst, grid));
  }
}
BENCHMARK(BM_OptGpGrid<true>)->Name("OptGpGrid/serial")->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OptGpGrid<false>)->Name("OptGpGrid/parallel")->Arg(7)->Unit(benchmark::kMillisecond);

template <bool kSerial>
void BM_RunTrials(benchmark::State& state) {
  GmdInstance inst = BenchGmd(12, 3, 3);
  Trial trial = [&](CounterRng& rng) { return ApproxGmdQuarter(inst, rng).value; };
  for (auto _ : state) {
    benchmark::DoNotOptimize(kSerial ? RunTrialsSerial(5, state.range(0), trial)
                                     : RunTrials(5, state.range(0), trial));
  }
}
BENCHMARK(BM_RunTrials<true>)->Name("RunTrials/serial")->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunTrials<false>)->Name("RunTrials/parallel")->Arg(20000)->Unit(benchmark::kMillisecond);

template <bool kSerial>
void BM_SampleRoundedLabels(benchmark::State& state) {
  VectorSystem vs = EdgeVectorSystem(4, 1, 0.01);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kSerial ? SampleRoundedLabelsSerial(vs, state.range(0), 7)
                                     : SampleRoundedLabels(vs, state.range(0), 7));
  }
}
BENCHMARK(BM_SampleRoundedLabels<true>)
    ->Name("SampleRoundedLabels/serial")
    ->Arg(200000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleRoundedLabels<false>)
    ->Name("SampleRoundedLabels/parallel")
    ->Arg(200000)
    ->Unit(benchmark::kMillisecond);

template <bool kSerial>
void BM_RoundAndEstimate(benchmark::State& state) {
  VectorSystem vs = EdgeVectorSystem(2, 1, 0.01);
  const std::vector<EdgeQuery> edges = {{0, 1, 1}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(kSerial ? RoundAndEstimateSerial(vs, edges, state.range(0), 8)
                                     : RoundAndEstimate(vs, edges, state.range(0), 8));
  }
}
BENCHMARK(BM_RoundAndEstimate<true>)
    ->Name("RoundAndEstimate/serial")
    ->Arg(200000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RoundAndEstimate<false>)
    ->Name("RoundAndEstimate/parallel")
    ->Arg(200000)
    ->Unit(benchmark::kMillisecond);

template <bool kSerial>
void BM_MaxGapStats(benchmark::State& state) {
  const std::vector<double> eps = {0.05, 0.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(kSerial ? ComputeMaxGapStatsSerial(10, state.range(0), 9, eps)
                                     : ComputeMaxGapStats(10, state.range(0), 9, eps));
  }
}
BENCHMARK(BM_MaxGapStats<true>)->Name("MaxGapStats/serial")->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaxGapStats<false>)
    ->Name("MaxGapStats/parallel")
    ->Arg(200000)
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace gmdlab

BENCHMARK_MAIN();
