#include <antcloud/power.hpp>

#include <antcloud/errors.hpp>

#include <algorithm>
#include <string>

namespace antcloud::power {

namespace {

void check_fraction(double u, const char* what) {
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError(std::string(what) + " utilization must lie in [0, 1]");
}

double active_power(const PowerProfile& p, double u_cpu, double u_mem) {
    return p.p_base + u_cpu * p.p_cpu_peak + u_mem * p.p_mem_peak;
}

std::string illegal(const NodeRecord& n, NodeState target) {
    return "illegal transition " + std::string(to_string(n.state)) + " -> " + std::string(to_string(target)) +
           " on node " + std::to_string(n.id.value);
}

} // namespace

double instantaneous_power(const NodeRecord& node, double u_cpu, double u_mem) {
    check_fraction(u_cpu, "CPU");
    check_fraction(u_mem, "memory");
    switch (node.state) {
    case NodeState::Active: return active_power(node.power, u_cpu, u_mem);
    case NodeState::Standby: return node.power.p_standby;
    case NodeState::Off:
    case NodeState::Failed: return 0.0;
    }
    return 0.0;
}

double billed_power(const NodeRecord& node, double u_cpu, double u_mem, SimTime now) {
    if (node.crashed) return 0.0;
    if (node.transition && now < node.transition->ready_at) {
        if (now < node.transition->boot_until) return node.power.p_standby; // max(off, standby)
        if (node.state == NodeState::Active) {
            return std::max(node.power.p_standby, instantaneous_power(node, u_cpu, u_mem));
        }
    }
    return instantaneous_power(node, u_cpu, u_mem);
}

double EnergyAccumulator::add(NodeId node, double watts, SimTime from, SimTime to) {
    if (to < from) throw EngineError("negative billing interval");
    const double joules = watts * (to - from);
    if (per_node_.size() <= node.value) per_node_.resize(node.value + 1, 0.0);
    per_node_[node.value] += joules;
    fleet_ += joules;
    return joules;
}

double EnergyAccumulator::node_joules(NodeId node) const {
    return node.value < per_node_.size() ? per_node_[node.value] : 0.0;
}

double accumulate_energy(EnergyAccumulator& acc, const NodeRecord& node, SimTime from, SimTime to, double u_cpu,
                         double u_mem) {
    if (to < from) throw EngineError("negative billing interval");
    return acc.add(node.id, billed_power(node, u_cpu, u_mem, from), from, to);
}

std::optional<SimTime> transition_node(NodeRecord& node, NodeState target, SimTime now) {
    if (node.state == target) return std::nullopt;
    const NodeState from = node.state;

    if (from == NodeState::Active && target == NodeState::Standby) {
        if (!node.hosted_vms.empty()) {
            throw PolicyViolationError("node " + std::to_string(node.id.value) + " hosts VMs and cannot leave Active");
        }
        node.state = NodeState::Standby;
        node.transition.reset();
        return std::nullopt;
    }
    if (from == NodeState::Standby && target == NodeState::Off) {
        node.state = NodeState::Off;
        node.transition.reset();
        return std::nullopt;
    }
    if (from == NodeState::Standby && target == NodeState::Active) {
        PowerTransition t;
        t.from = NodeState::Standby;
        t.boot_until = now;
        if (node.transition && node.transition->boot_until > now) {
            // Still booting: the wake phase starts once the boot phase ends.
            t.from = node.transition->from;
            t.boot_until = node.transition->boot_until;
        }
        t.ready_at = t.boot_until + node.power.wake_latency;
        t.serial = ++node.transition_serial;
        node.state = NodeState::Active;
        node.transition = t;
        return t.ready_at;
    }
    if (from == NodeState::Off && target == NodeState::Standby) {
        PowerTransition t;
        t.from = NodeState::Off;
        t.boot_until = now + node.power.boot_latency;
        t.ready_at = t.boot_until;
        t.serial = ++node.transition_serial;
        node.state = NodeState::Standby;
        node.transition = t;
        return t.ready_at;
    }
    throw PolicyViolationError(illegal(node, target));
}

std::optional<SimTime> wake(NodeRecord& node, SimTime now) {
    switch (node.state) {
    case NodeState::Active: return std::nullopt;
    case NodeState::Off: transition_node(node, NodeState::Standby, now); [[fallthrough]];
    case NodeState::Standby: return transition_node(node, NodeState::Active, now);
    case NodeState::Failed: break;
    }
    throw PolicyViolationError(illegal(node, NodeState::Active));
}

} // namespace antcloud::power
