// Copyright 2026 The symtest Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <vector>

#include <benchmark/benchmark.h>

#include "symtest/calibrate.hpp"
#include "symtest/eigen_sym.hpp"
#include "symtest/lrt.hpp"
#include "symtest/matnormal.hpp"
#include "symtest/pava.hpp"

namespace symtest {
namespace {

SymMat fixed_matrix(int p) {
  SymMat m(p);
  for (int i = 0; i < p; ++i) {
    for (int j = i; j < p; ++j) m.set(i, j, 1.0 / (1 + i + j) + (i == j ? i : 0));
  }
  return m;
}

void BM_EighDesc(benchmark::State& state) {
  const SymMat m = fixed_matrix(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eigh_desc(m));
}
BENCHMARK(BM_EighDesc)->Arg(3)->Arg(6)->Arg(12);

void BM_Pava(benchmark::State& state) {
  std::vector<double> y(state.range(0));
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = static_cast<double>((i * 7919) % 13) - 6.0;
  for (auto _ : state) benchmark::DoNotOptimize(pava_nonincreasing(y));
}
BENCHMARK(BM_Pava)->Arg(3)->Arg(64)->Arg(1024);

void BM_Sample(benchmark::State& state) {
  const SymMat mean = fixed_matrix(3);
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample(n, mean, CovParams{1.0, 0.1}, ++seed));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Sample)->Arg(50)->Arg(500);

void BM_TestS2(benchmark::State& state) {
  const SampleSet s = sample(static_cast<int>(state.range(0)), SymMat::diagonal(std::vector<double>{4, 2, 1}),
                             CovParams{1.0, 0.1}, 7);
  const std::vector<double> d0{4, 2, 1};
  for (auto _ : state) benchmark::DoNotOptimize(test_s2(s, d0, Multiplicities::distinct(3), std::nullopt));
}
BENCHMARK(BM_TestS2)->Arg(50)->Arg(500);

void BM_TestCommonEigvals(benchmark::State& state) {
  const SampleSet s = SampleSet::concat(sample(250, SymMat::diagonal(std::vector<double>{4, 2, 1}), {}, 8, 0),
                                        sample(250, SymMat::diagonal(std::vector<double>{1, 2, 4}), {}, 8, 250));
  for (auto _ : state) benchmark::DoNotOptimize(test2_s1(s, 250, Multiplicities::distinct(3), std::nullopt));
}
BENCHMARK(BM_TestCommonEigvals);

void BM_CovCheck(benchmark::State& state) {
  const SampleSet s = sample(500, SymMat::identity(3), CovParams{1.0, 0.2}, 9);
  for (auto _ : state) benchmark::DoNotOptimize(test_sigma_structure(s));
}
BENCHMARK(BM_CovCheck);

void BM_ConeWeights(benchmark::State& state) {
  const std::vector<double> d{0, 0, 0};
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_cone_weights(d, 10000, ++seed));
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_ConeWeights);

}  // namespace
}  // namespace symtest

BENCHMARK_MAIN();
