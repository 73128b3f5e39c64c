#include <antcloud/ants.hpp>

#include <benchmark/benchmark.h>

namespace {

using namespace antcloud;

Colony fleet(std::size_t n) {
    Colony c;
    for (std::size_t i = 0; i < n; ++i) {
        NodeRecord rec;
        rec.cpu_capacity = 8.0;
        rec.mem_capacity = 16.0;
        rec.state = i == 0 ? NodeState::Active : i <= 3 ? NodeState::Standby : NodeState::Off;
        c.add_node(std::move(rec));
    }
    c.table = sort_nodes(c.nodes, c.tunables.sort_weights);
    return c;
}

// Fills the whole fleet one request at a time, pointer advances included.
void BM_WorkerFillsFleet(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        state.PauseTiming();
        Colony c = fleet(n);
        const std::size_t requests = n * 8;
        for (std::size_t r = 0; r < requests; ++r) {
            ServiceRequest req;
            req.id = RequestId{static_cast<std::uint32_t>(r)};
            c.requests[req.id] = req;
            c.controller.request_queue.push_back(req.id);
        }
        state.ResumeTiming();
        benchmark::DoNotOptimize(ants::drain_queue(c));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 8);
}
BENCHMARK(BM_WorkerFillsFleet)->Arg(16)->Arg(128)->Arg(512);

} // namespace
