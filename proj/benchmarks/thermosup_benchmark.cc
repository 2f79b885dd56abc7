// Copyright 2026 The thermosup Authors
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

#include "thermosup/collision.h"
#include "thermosup/qmath.h"
#include "thermosup/twobath.h"

namespace thermosup {
namespace {

CollisionConfig HeatmapConfig(CollisionScenario scenario, std::size_t collisions) {
  CollisionConfig cfg;
  cfg.eta = 0.8;
  cfg.collisions = collisions;
  cfg.temperatures = {Temperature::FromKelvin(0.5), Temperature::FromKelvin(2.0)};
  cfg.scenario = scenario;
  return cfg;
}

void BM_TwoBathCell(benchmark::State& state) {
  const CollisionConfig cfg =
      HeatmapConfig(CollisionScenario::kTwoBath, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(CollisionalVisibility(cfg));
}
BENCHMARK(BM_TwoBathCell)->Arg(3)->Arg(5)->Arg(10);

void BM_OneBathCell(benchmark::State& state) {
  const CollisionConfig cfg =
      HeatmapConfig(CollisionScenario::kOneBath, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(CollisionalVisibility(cfg));
}
BENCHMARK(BM_OneBathCell)->Arg(3)->Arg(5)->Arg(10);

void BM_StatevectorEngine(benchmark::State& state) {
  CollisionConfig cfg =
      HeatmapConfig(CollisionScenario::kTwoBath, static_cast<std::size_t>(state.range(0)));
  cfg.engine = CollisionEngine::kStatevector;
  for (auto _ : state) benchmark::DoNotOptimize(CollisionalVisibility(cfg));
}
BENCHMARK(BM_StatevectorEngine)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Heatmap(benchmark::State& state) {
  const CollisionConfig cfg = HeatmapConfig(CollisionScenario::kTwoBath, 5);
  const GridSpec grid{.t_min = 0.1, .t_max = 5.0, .points = 25};
  for (auto _ : state) benchmark::DoNotOptimize(VisibilityHeatmap(grid, cfg, 1));
}
BENCHMARK(BM_Heatmap)->Unit(benchmark::kMillisecond);

void BM_PartialTrace(benchmark::State& state) {
  const std::size_t qubits = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const Dims dims(qubits, 2);
  const ComplexMatrix rho = RandomDensityMatrix(std::size_t{1} << qubits, rng).matrix();
  const std::vector<std::size_t> keep{0, qubits - 1};
  for (auto _ : state) benchmark::DoNotOptimize(PartialTrace(rho, dims, keep));
}
BENCHMARK(BM_PartialTrace)->Arg(4)->Arg(6)->Arg(8);

void BM_MaxVisibilitySearch(benchmark::State& state) {
  const HamiltonianSpec h = HamiltonianSpec::Qubit();
  const DensityMatrix probe = DensityMatrix::MaximallyMixed(2);
  const SearchOptions options{.trials = static_cast<std::size_t>(state.range(0)),
                              .seed = 1,
                              .refine_iterations = 0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(MaxVisibilitySearch(h, Temperature::FromKelvin(1.0),
                                                 Temperature::FromKelvin(0.5), probe, options));
  }
}
BENCHMARK(BM_MaxVisibilitySearch)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace thermosup

BENCHMARK_MAIN();
