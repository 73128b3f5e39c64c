#include <antcloud/resource_table.hpp>
#include <antcloud/sla_monitor.hpp>

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace antcloud;

std::vector<NodeRecord> random_fleet(std::size_t n) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> pick(0, 3);
    std::vector<NodeRecord> nodes(n);
    for (std::size_t i = 0; i < n; ++i) {
        nodes[i].id = NodeId{static_cast<std::uint32_t>(i)};
        nodes[i].cpu_capacity = 2.0 * (1 + pick(rng));
        nodes[i].mem_capacity = 4.0 * (1 + pick(rng));
        nodes[i].power.p_cpu_peak = 50.0 + 25.0 * pick(rng);
        nodes[i].power.p_mem_peak = 4.0 + 2.0 * pick(rng);
    }
    return nodes;
}

void BM_SortNodes(benchmark::State& state) {
    const auto nodes = random_fleet(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(sort_nodes(nodes, {}));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SortNodes)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_ComputeSlam(benchmark::State& state) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<SlaObservation> obs(1024);
    for (auto& o : obs) o = {2.0 * u(rng), u(rng), 0.0};
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sla::compute_slam({1.0, 0.8}, obs[i++ & 1023]));
    }
}
BENCHMARK(BM_ComputeSlam);

} // namespace
