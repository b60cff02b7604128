// Copyright 2026 The mubc Authors
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

// Serial reference versus OpenMP path for each data-parallel kernel.
// Argument 0 selects the serial path, 1 the parallel one.

#include <benchmark/benchmark.h>

#include <random>

#include "mubc/mu_search.hpp"
#include "mubc/oracle_numeric.hpp"
#include "mubc/reproduce.hpp"

namespace {

using namespace mubc;

ExecPolicy policy(const benchmark::State& state) {
  return state.range(0) == 0 ? ExecPolicy::kSerial : ExecPolicy::kParallel;
}

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel x" + std::to_string(max_threads()));
}

MUConfiguration<double> random_config(std::size_t count, std::size_t modes) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  MUConfiguration<double> c;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<DirectionVector<double>> f;
    for (std::size_t n = 0; n < modes; ++n) f.emplace_back(u(rng) + 3.0, u(rng));
    c.vectors.emplace_back(std::move(f));
  }
  c.targetK = 1.0;
  return c;
}

void BM_VerifyPairs(benchmark::State& state) {
  const auto config = random_config(300, 4);
  VerifyOptions opts;
  opts.exec = policy(state);
  for (auto _ : state) benchmark::DoNotOptimize(verify_mu(config, opts));
  label(state);
}
BENCHMARK(BM_VerifyPairs)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_VerifyPairsExact(benchmark::State& state) {
  auto config = fixtures::golden_five();
  for (int rep = 0; rep < 5; ++rep) {
    for (std::size_t i = 0; i < 5; ++i) config.vectors.push_back(config.vectors[i]);
  }
  VerifyOptions opts;
  opts.exec = policy(state);
  for (auto _ : state) benchmark::DoNotOptimize(verify_mu(config, opts));
  label(state);
}
BENCHMARK(BM_VerifyPairsExact)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_LatticeSearch(benchmark::State& state) {
  auto four = fixtures::golden_five();
  four.vectors.pop_back();
  SearchProblem problem;
  problem.seeds = four;
  problem.domain = CoefficientDomain::kGoldenLattice;
  problem.height = 2;
  SearchOptions opts;
  opts.budget = 0;
  opts.seed = 1;
  opts.exec = policy(state);
  for (auto _ : state) benchmark::DoNotOptimize(search_extension(problem, opts));
  label(state);
}
BENCHMARK(BM_LatticeSearch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MultiStart(benchmark::State& state) {
  SearchProblem problem;
  problem.seeds = to_numeric(fixtures::asymmetric_triple());
  SearchOptions opts;
  opts.budget = 20000;
  opts.restarts = 8;
  opts.seed = 1;
  opts.exec = policy(state);
  for (auto _ : state) benchmark::DoNotOptimize(search_extension(problem, opts));
  label(state);
}
BENCHMARK(BM_MultiStart)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Quadrature(benchmark::State& state) {
  const ChirpState a{rotated_direction(0.3), 0.0, 1.0};
  const ChirpState b{rotated_direction(1.1), 0.0, 1.0};
  QuadratureOptions opts;
  opts.exec = policy(state);
  for (auto _ : state) benchmark::DoNotOptimize(overlap_quadrature(a, b, opts));
  label(state);
}
BENCHMARK(BM_Quadrature)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
