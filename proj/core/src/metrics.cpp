#include <antcloud/metrics.hpp>

#include <antcloud/colony.hpp>
#include <antcloud/errors.hpp>

#include <algorithm>

namespace antcloud {

bool MetricsCollector::violating(const Colony& colony, const Telemetry& telemetry) {
    for (const auto& [id, vm] : colony.vms) {
        if (colony.now >= vm.lease_expiry) continue;
        const auto& req = colony.request(vm.request);
        const auto obs = telemetry.observe(colony, vm);
        if (obs.observed_rtime > req.rtime_target || obs.observed_thput < req.thput_target) return true;
    }
    return false;
}

void MetricsCollector::bill(const Colony& colony, const Telemetry& telemetry, SimTime from, SimTime to) {
    if (to < from) throw EngineError("negative billing interval");
    if (util_.size() < colony.nodes.size()) util_.resize(colony.nodes.size());
    const double dt = to - from;
    for (const auto& node : colony.nodes) {
        Resources u;
        if (node.state == NodeState::Active && !node.crashed) u = colony.node_utilization(node.id, telemetry);
        power::accumulate_energy(energy_, node, from, to, u.cpu, u.mem);
        auto& t = util_[node.id.value];
        t.cpu_seconds += u.cpu * dt;
        t.mem_seconds += u.mem * dt;
        if (dt > 0.0) {
            t.peak_cpu = std::max(t.peak_cpu, u.cpu);
            t.peak_mem = std::max(t.peak_mem, u.mem);
        }
    }
    if (dt > 0.0 && violating(colony, telemetry)) violation_ += dt;
}

void MetricsCollector::sample(const Colony& colony, const Telemetry& telemetry) {
    MetricSample s;
    s.time = colony.now;
    for (const auto& node : colony.nodes) {
        if (node.state == NodeState::Active && !node.crashed) ++s.active_nodes;
        Resources u;
        if (node.state == NodeState::Active && !node.crashed) u = colony.node_utilization(node.id, telemetry);
        s.fleet_power_w += power::billed_power(node, u.cpu, u.mem, colony.now);
    }
    samples_.push_back(s);
}

MetricsReport MetricsCollector::finish(const Colony& colony, SimTime horizon) const {
    MetricsReport r;
    r.horizon = horizon;
    r.fleet_energy_j = energy_.fleet_joules();
    r.sla_violation_seconds = violation_;
    r.samples = samples_;
    for (const auto& node : colony.nodes) {
        NodeMetrics m;
        m.node = node.id;
        m.name = node.name;
        m.energy_j = energy_.node_joules(node.id);
        if (node.id.value < util_.size()) {
            const auto& t = util_[node.id.value];
            m.mean_cpu_util = horizon > 0.0 ? t.cpu_seconds / horizon : 0.0;
            m.mean_mem_util = horizon > 0.0 ? t.mem_seconds / horizon : 0.0;
            m.peak_cpu_util = t.peak_cpu;
            m.peak_mem_util = t.peak_mem;
        }
        r.nodes.push_back(std::move(m));
    }
    for (std::size_t i = 0; i < r.slam_histogram.size(); ++i) {
        r.slam_histogram[i] = colony.slam_observations[i];
        r.observations += colony.slam_observations[i];
    }
    tally_actions(colony.log(), r);
    return r;
}

void tally_actions(std::span<const TimedAction> log, MetricsReport& r) {
    for (const auto& ta : log) {
        ++r.actions;
        std::visit(
            [&](const auto& a) {
                using T = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<T, action::Deploy>) ++r.deployments;
                if constexpr (std::is_same_v<T, action::Reject>) ++r.rejections;
                if constexpr (std::is_same_v<T, action::Migrate>) ++r.migrations;
                if constexpr (std::is_same_v<T, action::Clone>) ++r.clones_created;
                if constexpr (std::is_same_v<T, action::RemoveClone>) ++r.clones_reclaimed;
                if constexpr (std::is_same_v<T, action::NotifyAdmin>) ++r.admin_notifications;
                if constexpr (std::is_same_v<T, action::NotifyUser>) ++r.user_notifications;
                if constexpr (std::is_same_v<T, action::MarkFailed>) ++r.failures_detected;
            },
            ta.action);
    }
}

std::string_view to_string(Dominance d) {
    switch (d) {
    case Dominance::A: return "a";
    case Dominance::B: return "b";
    case Dominance::Tie: return "tie";
    }
    return "?";
}

namespace {

Dominance lower_wins(double a, double b) {
    if (a < b) return Dominance::A;
    if (b < a) return Dominance::B;
    return Dominance::Tie;
}

} // namespace

ComparisonSummary compare(const MetricsReport& a, const MetricsReport& b) {
    if (a.horizon != b.horizon) throw ComparisonError("reports cover different horizons");
    ComparisonSummary s;
    s.policy_a = a.policy;
    s.policy_b = b.policy;
    s.seed = a.seed;
    s.horizon = a.horizon;
    auto add = [&](std::string name, double x, double y) {
        MetricComparison m{std::move(name), x, y, x - y, std::nullopt};
        if (y != 0.0) m.ratio = x / y;
        s.metrics.push_back(std::move(m));
    };
    auto u = [](std::uint64_t v) { return static_cast<double>(v); };
    add("fleet_energy_j", a.fleet_energy_j, b.fleet_energy_j);
    add("sla_violation_seconds", a.sla_violation_seconds, b.sla_violation_seconds);
    add("deployments", u(a.deployments), u(b.deployments));
    add("rejections", u(a.rejections), u(b.rejections));
    add("migrations", u(a.migrations), u(b.migrations));
    add("clones_created", u(a.clones_created), u(b.clones_created));
    add("clones_reclaimed", u(a.clones_reclaimed), u(b.clones_reclaimed));
    add("admin_notifications", u(a.admin_notifications), u(b.admin_notifications));

    s.energy = lower_wins(a.fleet_energy_j, b.fleet_energy_j);
    s.sla = lower_wins(a.sla_violation_seconds, b.sla_violation_seconds);
    auto no_worse = [&](Dominance side) {
        return (s.energy == side || s.energy == Dominance::Tie) && (s.sla == side || s.sla == Dominance::Tie);
    };
    for (Dominance side : {Dominance::A, Dominance::B}) {
        if (no_worse(side) && (s.energy == side || s.sla == side)) s.dominates = side;
    }
    return s;
}

} // namespace antcloud
