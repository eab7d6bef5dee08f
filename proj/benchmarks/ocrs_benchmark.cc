// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <numeric>

#include <benchmark/benchmark.h>

#include "ocrs/chain_builder.h"
#include "ocrs/elem_set.h"
#include "ocrs/matroid.h"
#include "ocrs/ocrs_engine.h"
#include "ocrs/rng.h"
#include "ocrs/stochastic.h"

namespace ocrs {
namespace {

void BM_GraphicRank(benchmark::State& state) {
  const int v = static_cast<int>(state.range(0));
  MatroidOracle m = CompleteGraphMatroid(v);
  const ElemSet& s = m.ground_set();
  for (auto _ : state) benchmark::DoNotOptimize(m.Rank(s));
}
BENCHMARK(BM_GraphicRank)->Arg(4)->Arg(8)->Arg(16);

void BM_UniformSpan(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  MatroidOracle m = UniformMatroid(n, n / 2);
  ElemSet s(n, {0, 1});
  for (auto _ : state) benchmark::DoNotOptimize(m.Span(s));
}
BENCHMARK(BM_UniformSpan)->Arg(16)->Arg(256);

void BM_SampleActiveSet(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  MarginalVector x(std::vector<double>(n, 0.3));
  RngStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(SampleActiveSet(x, rng));
}
BENCHMARK(BM_SampleActiveSet)->Arg(6)->Arg(64);

// Overridden q and eta keep one iteration short.
void BM_SingleLink(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  MatroidOracle m = UniformMatroid(n, 2);
  MarginalVector x(std::vector<double>(n, 1.0 / n));
  LinkParams p = LinkParams::Conforming(3, 0.5, 0.05).WithOverrides(200, 8);
  RngStream rng(2, 0);
  for (auto _ : state) benchmark::DoNotOptimize(SingleOcrsLink(m, x, p, rng));
}
BENCHMARK(BM_SingleLink)->Arg(6)->Arg(12)->Arg(16);

void BM_GreedySelection(benchmark::State& state) {
  MatroidOracle m = CompleteGraphMatroid(6);
  const ElemSet& ground = m.ground_set();
  SpanningChain chain = SpanningChain::Trivial(ground);
  ArrivalOrder order(m.universe_size());
  std::iota(order.begin(), order.end(), 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunSelection(m, chain, ground, order));
  }
}
BENCHMARK(BM_GreedySelection);

}  // namespace
}  // namespace ocrs

BENCHMARK_MAIN();
