// Copyright 2026 The empc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "empc/controller.hpp"
#include "empc/forecast_model.hpp"

namespace {

const empc::QuadrotorModel& quad()
{
    static const empc::QuadrotorModel m(empc::QuadParams{}, empc::IntegratorConfig{});
    return m;
}

empc::PerformanceSpec hover_spec()
{
    Eigen::VectorXd target = Eigen::VectorXd::Zero(12);
    target.head<3>() << 1, 1, 1;
    return {target, Eigen::VectorXd::Constant(12, 0.001), {}};
}

empc::Ensemble prior(Eigen::Index members)
{
    return empc::draw(empc::GaussianSpec{Eigen::Vector4d::Constant(4.905), Eigen::Vector4d::Constant(0.01), 1},
                      members);
}

void BM_Forecast(benchmark::State& state)
{
    const auto u = prior(state.range(0));
    const auto spec = hover_spec();
    const int workers = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(empc::forecast(Eigen::VectorXd::Zero(12), u, spec, 4, quad(), workers));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Forecast)->Args({100, 1})->Args({100, 4})->Args({1000, 1})->Args({1000, 4})
    ->Unit(benchmark::kMicrosecond)->UseRealTime();

void BM_UpdateSqrt(benchmark::State& state)
{
    const auto u = prior(state.range(0));
    const auto spec = hover_spec();
    const auto z = empc::forecast(Eigen::VectorXd::Zero(12), u, spec, 4, quad());
    empc::Rng rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(empc::update_sqrt(u, z, spec, false, 0.0, rng));
}
BENCHMARK(BM_UpdateSqrt)->Arg(20)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_UpdateDirect(benchmark::State& state)
{
    const auto u = prior(state.range(0));
    const auto spec = hover_spec();
    const auto z = empc::forecast(Eigen::VectorXd::Zero(12), u, spec, 4, quad());
    empc::Rng rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(empc::update_direct(u, z, spec, false, rng));
}
BENCHMARK(BM_UpdateDirect)->Arg(20)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_ControlCycle(benchmark::State& state)
{
    empc::ControllerConfig cfg;
    cfg.members = state.range(0);
    cfg.workers = static_cast<int>(state.range(1));
    const auto u = prior(cfg.members);
    const auto spec = hover_spec();
    empc::Rng rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(empc::control_cycle(Eigen::VectorXd::Zero(12), u, spec, cfg, quad(), rng));
    }
}
BENCHMARK(BM_ControlCycle)->Args({100, 1})->Args({100, 4})->Unit(benchmark::kMicrosecond)->UseRealTime();

} // namespace

BENCHMARK_MAIN();
