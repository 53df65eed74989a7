#include <benchmark/benchmark.h>

#include "uavsar/evaluate.hpp"
#include "uavsar/experiment.hpp"
#include "uavsar/optimize.hpp"
#include "uavsar/repair.hpp"

using namespace uavsar;

namespace {

const experiment::PreparedInstance& instance() {
    static const auto inst = experiment::prepare_instance(experiment::default_spec().instances[0]);
    return inst;
}

scenario::Scenario scenario_with(std::size_t particles) {
    const auto& inst = instance();
    return scenario::build_scenario(inst.track, inst.accident, inst.forecast, particles, 7);
}

void BM_Haversine(benchmark::State& state) {
    const geo::GeoPoint a{34.0, 127.0}, b{34.3, 127.4};
    for (auto _ : state) benchmark::DoNotOptimize(geo::haversine_km(a, b));
}
BENCHMARK(BM_Haversine);

void BM_Fitness(benchmark::State& state) {
    const auto s = scenario_with(static_cast<std::size_t>(state.range(0)));
    optimize::FitnessEvaluator eval(s, 100.0);
    Rng rng = make_rng(3);
    const auto d = optimize::initialize(8, s.area, rng);
    for (auto _ : state) benchmark::DoNotOptimize(eval(d));
    state.counters["segments"] = static_cast<double>(eval.total_segments());
}
BENCHMARK(BM_Fitness)->Arg(10)->Arg(15);

void BM_Repair(benchmark::State& state) {
    const scenario::SearchArea area{{34.0, 127.0}, 2.0};
    Rng rng = make_rng(5);
    const auto d = optimize::initialize(static_cast<std::size_t>(state.range(0)), area, rng);
    for (auto _ : state) benchmark::DoNotOptimize(repair::repair(d));
}
BENCHMARK(BM_Repair)->Arg(6)->Arg(8);

void BM_Coverage(benchmark::State& state) {
    const auto& inst = instance();
    const auto s = scenario_with(10);
    Rng rng = make_rng(9);
    const auto d = optimize::initialize(8, s.area, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            evaluate::coverage(d, inst.track, inst.accident.accident_index, inst.accident.target_index()));
    }
}
BENCHMARK(BM_Coverage);

void BM_Optimizer(benchmark::State& state) {
    const auto s = scenario_with(10);
    optimize::OptimizerConfig cfg;
    cfg.algorithm = static_cast<optimize::Algorithm>(state.range(0));
    cfg.n_uavs = 6;
    for (auto _ : state) benchmark::DoNotOptimize(optimize::run(s, cfg));
    state.SetLabel(std::string(optimize::to_string(cfg.algorithm)));
}
BENCHMARK(BM_Optimizer)
    ->Arg(static_cast<int>(optimize::Algorithm::random))
    ->Arg(static_cast<int>(optimize::Algorithm::sa))
    ->Arg(static_cast<int>(optimize::Algorithm::pso))
    ->Arg(static_cast<int>(optimize::Algorithm::ga))
    ->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
