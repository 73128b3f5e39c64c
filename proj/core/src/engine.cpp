#include <antcloud/engine.hpp>

#include <antcloud/errors.hpp>

#include <algorithm>

namespace antcloud {

std::string_view to_string(EventKind k) {
    switch (k) {
    case EventKind::RequestArrival: return "request_arrival";
    case EventKind::AntSpawn: return "ant_spawn";
    case EventKind::AntHop: return "ant_hop";
    case EventKind::SampleMetrics: return "sample_metrics";
    case EventKind::NodeJoin: return "node_join";
    case EventKind::NodeFail: return "node_fail";
    case EventKind::LeaseExpiry: return "lease_expiry";
    case EventKind::TransitionComplete: return "transition_complete";
    case EventKind::DemandChange: return "demand_change";
    }
    return "?";
}

std::uint64_t EventQueue::push(SimTime time, EventKind kind, std::uint64_t payload) {
    const std::uint64_t seq = next_seq_++;
    heap_.push({time, seq, kind, payload});
    return seq;
}

SimEvent EventQueue::pop() {
    SimEvent ev = heap_.top();
    heap_.pop();
    return ev;
}

namespace {

NodeRecord make_node(const NodeSpec& spec) {
    NodeRecord n;
    n.name = spec.name;
    n.cpu_capacity = spec.cpu;
    n.mem_capacity = spec.mem;
    n.power = spec.power;
    return n;
}

double spawn_interval(const Tunables& t, ants::AntKind kind) {
    double per_minute = 0.0;
    switch (kind) {
    case ants::AntKind::Tester: per_minute = t.tester_per_minute; break;
    case ants::AntKind::Scout: per_minute = t.scout_per_minute; break;
    case ants::AntKind::Cleaner: per_minute = t.cleaner_per_minute; break;
    case ants::AntKind::Worker: break;
    }
    return per_minute > 0.0 ? 60.0 / per_minute : 0.0;
}

} // namespace

Engine::Engine(const ScenarioConfig& cfg)
    : cfg_(cfg), colony_(cfg.tunables), telemetry_(cfg.tunables.saturation_rtime), rng_(cfg.seed) {
    validate(cfg_);
    const auto adj = adjacency(cfg_);
    for (std::size_t i = 0; i < cfg_.nodes.size(); ++i) {
        NodeRecord n = make_node(cfg_.nodes[i]);
        for (auto j : adj[i]) n.neighbor_ids.emplace_back(j);
        colony_.add_node(std::move(n));
    }
    for (std::size_t i = 0; i < cfg_.requests.size(); ++i) {
        const auto& spec = cfg_.requests[i];
        ServiceRequest r;
        r.id = RequestId{static_cast<std::uint32_t>(i)};
        r.thput_target = spec.thput;
        r.rtime_target = spec.rtime;
        r.app_label = spec.app;
        r.os_label = spec.os;
        r.lease_duration = spec.lease;
        r.arrival_time = spec.arrival;
        r.workload_index = i;
        colony_.requests.emplace(r.id, r);
        telemetry_.set_profile(r.id, build_profile(spec.workload, cfg_.horizon, cfg_.traces));
    }
    colony_.table = sort_nodes(colony_.nodes, cfg_.tunables.sort_weights);

    // Ant policy starts with the pointed node serving, the warm pool in
    // Standby and the rest Off; baselines keep everything on.
    const auto& entries = colony_.table.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        auto& n = colony_.node(entries[i].node);
        if (cfg_.policy != Policy::Ant || i == 0) {
            n.state = NodeState::Active;
        } else if (i <= cfg_.tunables.warm_pool_size) {
            n.state = NodeState::Standby;
        } else {
            n.state = NodeState::Off;
        }
    }
    for (const auto& n : colony_.nodes) colony_.refresh_entry(n.id, telemetry_);
    schedule_initial();
}

void Engine::schedule_initial() {
    const SimTime h = cfg_.horizon;
    queue_.push(0.0, EventKind::SampleMetrics);
    for (std::size_t i = 0; i < cfg_.requests.size(); ++i) {
        const auto& r = cfg_.requests[i];
        if (r.arrival < h) queue_.push(r.arrival, EventKind::RequestArrival, i);
        if (r.arrival + r.lease < h) queue_.push(r.arrival + r.lease, EventKind::LeaseExpiry, i);
    }
    for (std::size_t i = 0; i < cfg_.requests.size(); ++i) {
        const auto profile = build_profile(cfg_.requests[i].workload, h, cfg_.traces);
        for (const auto& p : profile.points()) {
            if (p.time > 0.0 && p.time < h) queue_.push(p.time, EventKind::DemandChange, i);
        }
    }
    for (const auto& f : cfg_.faults) {
        if (f.at < h) queue_.push(f.at, EventKind::NodeFail, f.node);
    }
    for (std::size_t i = 0; i < cfg_.joins.size(); ++i) {
        if (cfg_.joins[i].at < h) queue_.push(cfg_.joins[i].at, EventKind::NodeJoin, i);
    }
    if (cfg_.policy == Policy::Ant) {
        for (auto kind : {ants::AntKind::Tester, ants::AntKind::Scout, ants::AntKind::Cleaner}) {
            if (spawn_interval(cfg_.tunables, kind) > 0.0)
                queue_.push(0.0, EventKind::AntSpawn, static_cast<std::uint64_t>(kind));
        }
    }
}

bool Engine::step() {
    if (finished_ || queue_.empty() || queue_.top().time >= cfg_.horizon) return false;
    const SimEvent ev = queue_.pop();
    if (ev.time < clock_) throw EngineError("event time regressed");
    metrics_.bill(colony_, telemetry_, clock_, ev.time);
    clock_ = ev.time;
    colony_.now = clock_;
    dispatch(ev);
    drain_boundaries();
    return true;
}

MetricsReport Engine::run() {
    if (finished_) throw EngineError("run() called twice");
    while (step()) {
    }
    metrics_.bill(colony_, telemetry_, clock_, cfg_.horizon);
    clock_ = cfg_.horizon;
    colony_.now = clock_;
    finished_ = true;
    MetricsReport r = metrics_.finish(colony_, cfg_.horizon);
    r.policy = std::string(to_string(cfg_.policy));
    r.seed = cfg_.seed;
    r.config_hash = config_hash(cfg_);
    return r;
}

void Engine::dispatch(const SimEvent& ev) {
    switch (ev.kind) {
    case EventKind::RequestArrival: on_arrival(ev.payload); break;
    case EventKind::AntSpawn: on_spawn(static_cast<ants::AntKind>(ev.payload)); break;
    case EventKind::AntHop: on_hop(static_cast<std::uint32_t>(ev.payload)); break;
    case EventKind::SampleMetrics: on_sample(); break;
    case EventKind::NodeJoin: on_join(ev.payload); break;
    case EventKind::NodeFail: on_fail(ev.payload); break;
    case EventKind::LeaseExpiry: on_lease_expiry(ev.payload); break;
    case EventKind::TransitionComplete:
    case EventKind::DemandChange:
        // Both only bound a billing interval.
        break;
    }
}

void Engine::drain_boundaries() {
    for (SimTime t : colony_.take_boundaries()) {
        if (t > clock_ && t < cfg_.horizon) queue_.push(t, EventKind::TransitionComplete);
    }
}

void Engine::allocate_queued() {
    auto& q = colony_.controller.request_queue;
    switch (cfg_.policy) {
    case Policy::Ant: ants::drain_queue(colony_); break;
    case Policy::RoundRobin:
        while (!q.empty()) {
            const RequestId r = q.front();
            q.pop_front();
            round_robin_.allocate(colony_, r);
        }
        break;
    case Policy::FirstFit:
        while (!q.empty()) {
            const RequestId r = q.front();
            q.pop_front();
            baselines::first_fit_allocate(colony_, r);
        }
        break;
    }
}

void Engine::on_arrival(std::size_t index) {
    colony_.controller.request_queue.push_back(RequestId{static_cast<std::uint32_t>(index)});
    allocate_queued();
}

void Engine::on_sample() {
    metrics_.sample(colony_, telemetry_);
    for (auto& [id, vm] : colony_.vms) {
        if (clock_ >= vm.lease_expiry) continue;
        const auto& req = colony_.request(vm.request);
        vm.slam = sla::compute_slam({req.rtime_target, req.thput_target}, telemetry_.observe(colony_, vm),
                                    colony_.tunables.sla);
        colony_.count_observation(vm.slam);
    }
    const SimTime next = clock_ + cfg_.tunables.sample_interval;
    if (next < cfg_.horizon) queue_.push(next, EventKind::SampleMetrics);
}

void Engine::on_spawn(ants::AntKind kind) {
    const SimTime next = clock_ + spawn_interval(cfg_.tunables, kind);
    if (next < cfg_.horizon) queue_.push(next, EventKind::AntSpawn, static_cast<std::uint64_t>(kind));

    std::vector<NodeId> fleet;
    for (const auto& e : colony_.table.entries()) fleet.push_back(e.node);
    if (fleet.empty()) return;
    std::sort(fleet.begin(), fleet.end());

    ants::AntAgent ant;
    ant.id = next_ant_++;
    ant.kind = kind;
    ant.spawn_time = clock_;
    ants::arrive(ant, fleet[ants::pick_index(rng_, fleet.size())]);
    visit(ant);
    const SimTime hop = clock_ + cfg_.tunables.ant_hop_interval;
    if (hop <= ant.spawn_time + cfg_.tunables.ant_lifetime && hop < cfg_.horizon) {
        queue_.push(hop, EventKind::AntHop, ant.id);
        ants_.emplace(ant.id, std::move(ant));
    }
}

void Engine::on_hop(std::uint32_t id) {
    auto it = ants_.find(id);
    if (it == ants_.end()) return;
    auto& ant = it->second;
    ants::arrive(ant, ants::next_hop(ant, colony_, rng_));
    visit(ant);
    const SimTime hop = clock_ + cfg_.tunables.ant_hop_interval;
    if (hop <= ant.spawn_time + cfg_.tunables.ant_lifetime && hop < cfg_.horizon) {
        queue_.push(hop, EventKind::AntHop, id);
    } else {
        ants_.erase(it);
    }
}

void Engine::visit(ants::AntAgent& ant) {
    const NodeId node = *ant.current;
    if (!colony_.table.contains(node)) return;
    auto& rec = colony_.node(node);
    if (rec.responsive()) rec.last_seen = clock_;
    switch (ant.kind) {
    case ants::AntKind::Tester: ants::tester_visit(colony_, node, telemetry_); break;
    case ants::AntKind::Scout: ants::scout_visit(colony_, node); break;
    case ants::AntKind::Cleaner:
        ants::cleaner_visit(colony_, node, telemetry_);
        if (!colony_.controller.request_queue.empty()) allocate_queued();
        break;
    case ants::AntKind::Worker: break;
    }
}

void Engine::on_fail(std::size_t index) {
    const NodeId id{static_cast<std::uint32_t>(index)};
    auto& node = colony_.node(id);
    if (node.crashed || node.state == NodeState::Failed) return;
    node.crashed = true;
    node.last_seen = clock_;
    if (cfg_.policy == Policy::Ant) {
        ants::redirect_joins(colony_, id);
        return;
    }
    ants::mark_failed(colony_, id);
    allocate_queued();
}

void Engine::on_join(std::size_t index) {
    const auto& spec = cfg_.joins[index];
    JoinRequest join{spec.key, make_node(spec.node)};
    if (cfg_.policy != Policy::Ant) {
        const std::optional<NodeId> contact =
            spec.contact ? std::optional<NodeId>(NodeId{*spec.contact}) : std::nullopt;
        if (auto id = ants::register_node(colony_, join, contact)) {
            colony_.node(*id).state = NodeState::Active;
            colony_.refresh_entry(*id, telemetry_);
        }
        return;
    }
    if (!spec.contact) {
        ants::register_node(colony_, join, std::nullopt);
        return;
    }
    const NodeId contact{*spec.contact};
    colony_.pending_joins[contact].push_back(std::move(join));
    if (!colony_.node(contact).responsive()) ants::redirect_joins(colony_, contact);
}

void Engine::on_lease_expiry(std::size_t index) {
    const RequestId request{static_cast<std::uint32_t>(index)};
    telemetry_.stop(request);
    if (cfg_.policy == Policy::Ant) return;
    for (VmId vm : colony_.app_vms(request)) {
        const NodeId host = colony_.vm(vm).host;
        colony_.erase_vm(vm);
        colony_.record(action::RemoveVm{vm, host});
    }
}

MetricsReport run(const ScenarioConfig& cfg) { return Engine(cfg).run(); }

} // namespace antcloud
