#include <antcloud/engine.hpp>

#include <benchmark/benchmark.h>

#include <filesystem>

namespace {

using namespace antcloud;

const std::filesystem::path kDir = ANTCLOUD_SCENARIO_DIR;

void run_file(benchmark::State& state, const char* file, Policy policy) {
    auto cfg = load_scenario(kDir / file);
    cfg.policy = policy;
    for (auto _ : state) benchmark::DoNotOptimize(run(cfg));
}

void BM_ConsolidationAnt(benchmark::State& s) { run_file(s, "consolidation.json", Policy::Ant); }
void BM_ConsolidationFirstFit(benchmark::State& s) { run_file(s, "consolidation.json", Policy::FirstFit); }
void BM_DiurnalDayAnt(benchmark::State& s) { run_file(s, "diurnal.json", Policy::Ant); }

BENCHMARK(BM_ConsolidationAnt)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConsolidationFirstFit)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DiurnalDayAnt)->Unit(benchmark::kMillisecond);

} // namespace
