#include "nussbaum_pid/properties.hpp"
#include "nussbaum_pid/sweep.hpp"

#include <benchmark/benchmark.h>

using namespace nussbaum_pid;

namespace {

std::vector<SimConfig> sweep_configs() {
    std::vector<SimConfig> configs;
    for (double s : {1.0, -1.0, 0.5, 2.0, -0.5, 1.5, -2.0, 0.75}) {
        SimConfig cfg = apply_sweep_value(make_preset(Preset::paper), SweepParam::kappa_scale, s);
        cfg.duration = 1.0;
        configs.push_back(cfg);
    }
    return configs;
}

void BM_SweepSerial(benchmark::State &state) {
    const auto configs = sweep_configs();
    for (auto _ : state) benchmark::DoNotOptimize(run_scenarios_serial(configs));
}

void BM_SweepParallel(benchmark::State &state) {
    const auto configs = sweep_configs();
    for (auto _ : state) benchmark::DoNotOptimize(run_scenarios(configs));
}

void BM_PropertiesSerial(benchmark::State &state) {
    const auto samples = draw_model_samples(static_cast<std::size_t>(state.range(0)), 2024);
    const RobotParams p;
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_model_properties_serial(p, samples));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PropertiesParallel(benchmark::State &state) {
    const auto samples = draw_model_samples(static_cast<std::size_t>(state.range(0)), 2024);
    const RobotParams p;
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_model_properties(p, samples));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PropertiesSerial)->Arg(1000)->Arg(100000);
BENCHMARK(BM_PropertiesParallel)->Arg(1000)->Arg(100000)->UseRealTime();

BENCHMARK_MAIN();
