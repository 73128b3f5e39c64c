#pragma once

#include <antcloud/colony.hpp>
#include <antcloud/resource_table.hpp>

#include <map>
#include <vector>

namespace fixture {

using namespace antcloud;

/// Per-VM scripted measurements; unknown VMs are idle and comfortable.
class FixedTelemetry final : public Telemetry {
public:
    std::map<VmId, Resources> usage;
    std::map<VmId, SlaObservation> obs;

    Resources vm_usage(const Colony&, const VmInstance& vm) const override {
        auto it = usage.find(vm.id);
        return it == usage.end() ? Resources{} : it->second;
    }
    SlaObservation observe(const Colony&, const VmInstance& vm) const override {
        auto it = obs.find(vm.id);
        return it == obs.end() ? SlaObservation{0.0, 1.0, 0.0} : it->second;
    }
};

inline NodeRecord machine(double cpu, double mem, double p_cpu = 100.0) {
    NodeRecord n;
    n.cpu_capacity = cpu;
    n.mem_capacity = mem;
    n.power.p_cpu_peak = p_cpu;
    return n;
}

/// `states.size()` identical machines whose table order equals their id
/// order (strictly falling PPW), each in the given state, ring-linked.
inline Colony fleet(const std::vector<NodeState>& states, double cpu = 4.0, double mem = 8.0, Tunables t = {}) {
    Colony c(t);
    const auto n = states.size();
    for (std::size_t i = 0; i < n; ++i) {
        NodeRecord rec = machine(cpu, mem, 100.0 + static_cast<double>(i));
        rec.state = states[i];
        if (n > 1) {
            rec.neighbor_ids.push_back(NodeId{static_cast<std::uint32_t>((i + 1) % n)});
            rec.neighbor_ids.push_back(NodeId{static_cast<std::uint32_t>((i + n - 1) % n)});
        }
        c.add_node(std::move(rec));
    }
    c.table = sort_nodes(c.nodes, t.sort_weights);
    FixedTelemetry idle;
    for (const auto& node : c.nodes) c.refresh_entry(node.id, idle);
    return c;
}

inline RequestId add_request(Colony& c, double lease = 30 * kSecondsPerDay, double rtime = 1.0, double thput = 0.8) {
    ServiceRequest r;
    r.id = RequestId{static_cast<std::uint32_t>(c.requests.size())};
    r.rtime_target = rtime;
    r.thput_target = thput;
    r.lease_duration = lease;
    r.arrival_time = c.now;
    c.requests[r.id] = r;
    return r.id;
}

/// A root VM of a fresh request placed directly on `node`.
inline VmId place(Colony& c, NodeId node, Resources ent = {1.0, 1.0}, double lease = 30 * kSecondsPerDay) {
    const RequestId r = add_request(c, lease);
    return c.create_vm(r, node, ent, std::nullopt, 1.0);
}

inline std::vector<std::string> log_text(const Colony& c) {
    std::vector<std::string> out;
    for (const auto& a : c.log()) out.push_back(to_string(a.action));
    return out;
}

inline constexpr auto A = NodeState::Active;
inline constexpr auto S = NodeState::Standby;
inline constexpr auto O = NodeState::Off;

} // namespace fixture
