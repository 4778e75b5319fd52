// Copyright 2026 the sdot authors
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

#include "sdot/diagnostics.hpp"
#include "sdot/quantize.hpp"
#include "sdot/solver.hpp"

using namespace sdot;

namespace {

SourceDensity unit_square() {
  Eigen::VectorXd lo(2), hi(2);
  lo << 0, 0;
  hi << 1, 1;
  return make_uniform_density(Domain::box(lo, hi));
}

void bm_quantize(benchmark::State& state) {
  auto g = make_gaussian_density(2, 1.0);
  for (auto _ : state) {
    auto q = quantize_target(g, static_cast<int>(state.range(0)), 4.0, 1);
    benchmark::DoNotOptimize(q);
  }
}

void bm_diagram_build(benchmark::State& state) {
  auto src = unit_square();
  auto t = quantize_target(make_gaussian_density(2, 1.0),
                           static_cast<int>(state.range(0)), 4.0, 1);
  LaguerreBuilder builder(src, t);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<int>(t.size()));
  for (auto _ : state) {
    auto d = builder.build(w);
    benchmark::DoNotOptimize(d);
  }
}

void bm_solve(benchmark::State& state) {
  auto src = unit_square();
  auto t = quantize_target(make_gaussian_density(2, 1.0),
                           static_cast<int>(state.range(0)), 4.0, 1);
  for (auto _ : state) {
    auto res = solve_weights(src, t, 1e-9);
    benchmark::DoNotOptimize(res);
  }
}

void bm_conjugate(benchmark::State& state) {
  auto src = unit_square();
  auto t = quantize_target(make_gaussian_density(2, 1.0),
                           static_cast<int>(state.range(0)), 4.0, 1);
  auto res = solve_weights(src, t, 1e-9);
  auto u = res.diagram.potential().canonical();
  for (auto _ : state) {
    auto star = legendre_conjugate(u);
    benchmark::DoNotOptimize(star);
  }
}

void bm_wedge_scaling(benchmark::State& state) {
  std::vector<double> thetas = {1e-3, 1e-2, 1e-1};
  for (auto _ : state) {
    auto rep = wedge_volume_scaling(3, 2.0, 1.0, thetas,
                                    static_cast<std::size_t>(state.range(0)), 1);
    benchmark::DoNotOptimize(rep);
  }
}

BENCHMARK(bm_quantize)->Arg(64)->Arg(256);
BENCHMARK(bm_diagram_build)->Arg(64)->Arg(256);
BENCHMARK(bm_solve)->Arg(16)->Arg(64);
BENCHMARK(bm_conjugate)->Arg(64)->Arg(256);
BENCHMARK(bm_wedge_scaling)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
