// Copyright 2026 The memkernel Authors
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


#include <benchmark/benchmark.h>

#include "memkernel/constructors.hpp"
#include "memkernel/mapfamily.hpp"
#include "memkernel/random.hpp"
#include "memkernel/solver.hpp"
#include "memkernel/superop.hpp"

namespace mk = memkernel;

namespace {

mk::GkslSpec damping(double gamma) {
  mk::ComplexMatrix lower = mk::ComplexMatrix::Zero(2, 2);
  lower(0, 1) = std::sqrt(gamma);
  return {mk::ComplexMatrix::Zero(2, 2), {lower}};
}

void BM_Convolve(benchmark::State& state) {
  const mk::TimeGrid g(5.0, static_cast<int>(state.range(0)));
  const auto p = mk::semigroup_pair(damping(1.0), g);
  for (auto _ : state) benchmark::DoNotOptimize(mk::convolve(p.N(), p.Q()));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Convolve)->RangeMultiplier(2)->Range(128, 4096)->Unit(benchmark::kMillisecond)->Complexity();

void BM_SolveVolterra(benchmark::State& state) {
  const mk::TimeGrid g(5.0, static_cast<int>(state.range(0)));
  const auto p = mk::semigroup_pair(damping(1.0), g);
  for (auto _ : state) benchmark::DoNotOptimize(mk::solve_volterra(p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveVolterra)->RangeMultiplier(2)->Range(128, 4096)->Unit(benchmark::kMillisecond)->Complexity();

void BM_SolveSeries(benchmark::State& state) {
  const mk::TimeGrid g(5.0, static_cast<int>(state.range(0)));
  const auto p = mk::semigroup_pair(damping(1.0), g);
  for (auto _ : state) benchmark::DoNotOptimize(mk::solve_series(p, 30));
}
BENCHMARK(BM_SolveSeries)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_CheckMapProperties(benchmark::State& state) {
  mk::Rng rng(1);
  const int d = static_cast<int>(state.range(0));
  const auto s = mk::kraus_to_superop(mk::random_kraus_channel(d, d, rng));
  for (auto _ : state) benchmark::DoNotOptimize(mk::check_map_properties(s, mk::default_cp_tolerance(d)));
}
BENCHMARK(BM_CheckMapProperties)->DenseRange(2, 4);

}  // namespace

BENCHMARK_MAIN();
