// Copyright 2026 The iadmm Authors
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

#include <utility>

#include "iadmm/engine.hpp"
#include "iadmm/logmf.hpp"

namespace {

using iadmm::RowMatrix;
using namespace iadmm::logmf;

// Square m x m instance with r = m / 2, density 0.1, lambda = 1/4, beta = 1.
struct Fixture {
  LogMfInstance inst;
  LogMfState state;

  explicit Fixture(iadmm::Index m) {
    inst.Y = generate_instance(m, m, 0.1, 1).to_dense();
    inst.r = m / 2;
    inst.lambda_d = inst.lambda_t = 0.25;
    auto [U, V] = initial_factors(m, m, inst.r, 2);
    state.U = std::move(U);
    state.V = std::move(V);
    state.W = state.U * state.V;
    state.omega = RowMatrix::Zero(m, m);
  }
};

void BM_UpdateU(benchmark::State& st) {
  const Fixture f(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(update_U(f.state, f.inst, f.state.U));
}

void BM_UpdateV(benchmark::State& st) {
  const Fixture f(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(update_V(f.state, f.inst, f.state.V));
}

void BM_UpdateW(benchmark::State& st) {
  const Fixture f(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(update_W(f.state, f.inst));
}

void BM_GWithGrad(benchmark::State& st) {
  const Fixture f(st.range(0));
  RowMatrix grad;
  for (auto _ : st) {
    benchmark::DoNotOptimize(G_with_grad(f.state.W, f.inst.Y, f.inst.c, grad));
  }
}

// Full solver iterations through the generic engine, trace included.
void BM_EngineIterations(benchmark::State& st) {
  const Fixture f(st.range(0));
  const LogMfProblem p(f.inst);
  iadmm::SolverConfig cfg;
  cfg.tau1 = cfg.tau2 = 0.5;
  cfg.B2 = 0.9;
  cfg.max_iters = 10;
  cfg.check_level = iadmm::CheckLevel::kOff;
  const iadmm::InitialPoint init{p.pack(f.state.U, f.state.V), std::nullopt, std::nullopt};
  for (auto _ : st) benchmark::DoNotOptimize(iadmm::run(p, cfg, init));
  st.SetItemsProcessed(st.iterations() * 10);
}

BENCHMARK(BM_UpdateU)->Arg(50)->Arg(200);
BENCHMARK(BM_UpdateV)->Arg(50)->Arg(200);
BENCHMARK(BM_UpdateW)->Arg(50)->Arg(200);
BENCHMARK(BM_GWithGrad)->Arg(50)->Arg(200);
BENCHMARK(BM_EngineIterations)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
