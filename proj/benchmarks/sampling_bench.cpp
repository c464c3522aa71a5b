// Copyright 2026 The sdist Authors
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

#include "sdist/sampler.hpp"

namespace sdist {
namespace {

const SParams kShapeSets[] = {
    {0.5, 100, 0.2, 1, 3},
    {0.5, 100, 0.2, 1, 7},
    {0.5, 100, 0.2, 0.1, 7},
    {0.5, 100, 0.1, 0.4, 7},
};

void BM_SampleExact(benchmark::State& state) {
  const SParams& p = kShapeSets[state.range(0)];
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample({p, 10'000, ++seed}));
  state.SetItemsProcessed(state.iterations() * 10'000);
}
BENCHMARK(BM_SampleExact)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_SampleTable(benchmark::State& state) {
  const SParams& p = kShapeSets[state.range(0)];
  const QuantileTable table = QuantileTable::build(p);
  Sampler s(p, 1);
  for (auto _ : state) {
    for (int i = 0; i < 10'000; ++i) {
      benchmark::DoNotOptimize(table(s.next_uniform()));
    }
  }
  state.SetItemsProcessed(state.iterations() * 10'000);
}
BENCHMARK(BM_SampleTable)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_TableBuild(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(QuantileTable::build(kShapeSets[0]));
  }
}
BENCHMARK(BM_TableBuild)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace sdist
