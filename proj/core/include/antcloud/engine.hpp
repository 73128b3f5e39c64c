#pragma once

// Deterministic discrete-event loop. One clock, one (time, seq)-ordered
// queue, one RNG stream consumed in dispatch order.

#include <antcloud/ants.hpp>
#include <antcloud/baselines.hpp>
#include <antcloud/colony.hpp>
#include <antcloud/metrics.hpp>
#include <antcloud/scenario.hpp>
#include <antcloud/telemetry.hpp>

#include <cstdint>
#include <map>
#include <queue>
#include <vector>

namespace antcloud {

enum class EventKind : std::uint8_t {
    RequestArrival,
    AntSpawn,
    AntHop,
    SampleMetrics,
    NodeJoin,
    NodeFail,
    LeaseExpiry,
    TransitionComplete,
    DemandChange,
};

std::string_view to_string(EventKind k);

struct SimEvent {
    SimTime time = 0.0;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::SampleMetrics;
    std::uint64_t payload = 0; // request index, ant id, node index, join index or ant kind
};

/// Min-queue on (time, seq). Sequence numbers are assigned at push, so
/// events scheduled for the same instant dispatch in scheduling order.
class EventQueue {
public:
    std::uint64_t push(SimTime time, EventKind kind, std::uint64_t payload = 0);
    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }
    const SimEvent& top() const { return heap_.top(); }
    SimEvent pop();

private:
    struct Later {
        bool operator()(const SimEvent& a, const SimEvent& b) const {
            return a.time != b.time ? a.time > b.time : a.seq > b.seq;
        }
    };
    std::priority_queue<SimEvent, std::vector<SimEvent>, Later> heap_;
    std::uint64_t next_seq_ = 0;
};

class Engine {
public:
    /// Validates the scenario (ConfigError) and schedules its events.
    explicit Engine(const ScenarioConfig& cfg);

    /// Dispatches the next event before the horizon. Returns false when
    /// none is left.
    bool step();
    /// Runs to the horizon and returns the report. Call once.
    MetricsReport run();

    SimTime clock() const { return clock_; }
    const Colony& colony() const { return colony_; }
    const PerformanceTelemetry& telemetry() const { return telemetry_; }
    const EventQueue& queue() const { return queue_; }
    /// Called after every recorded action.
    void set_observer(Colony::Observer obs) { colony_.set_observer(std::move(obs)); }

private:
    void schedule_initial();
    void dispatch(const SimEvent& ev);
    void on_arrival(std::size_t index);
    void on_spawn(ants::AntKind kind);
    void on_hop(std::uint32_t ant);
    void on_fail(std::size_t node);
    void on_join(std::size_t index);
    void on_lease_expiry(std::size_t index);
    void on_sample();
    void visit(ants::AntAgent& ant);
    void allocate_queued();
    void drain_boundaries();

    ScenarioConfig cfg_;
    Colony colony_;
    PerformanceTelemetry telemetry_;
    MetricsCollector metrics_;
    EventQueue queue_;
    ants::Rng rng_;
    baselines::RoundRobin round_robin_;
    std::map<std::uint32_t, ants::AntAgent> ants_;
    std::uint32_t next_ant_ = 0;
    SimTime clock_ = 0.0;
    bool finished_ = false;
};

/// Convenience: Engine(cfg).run().
MetricsReport run(const ScenarioConfig& cfg);

} // namespace antcloud
