#include <antcloud/colony.hpp>

#include <antcloud/errors.hpp>
#include <antcloud/power.hpp>

#include <algorithm>

namespace antcloud {

Colony::Colony(Tunables t) : table(t.sort_weights), tunables(t) {}

void Colony::record(Action a) {
    if (const auto* n = std::get_if<action::NotifyAdmin>(&a)) {
        controller.admin_log.push_back({now, n->reason});
    } else if (const auto* u = std::get_if<action::NotifyUser>(&a)) {
        controller.user_log.push_back({now, u->request, u->lease_expiry});
    }
    log_.push_back({now, std::move(a)});
    if (observer_) observer_(*this, log_.back());
}

NodeRecord& Colony::node(NodeId id) {
    if (!has_node(id)) throw NotFoundError("unknown node " + std::to_string(id.value));
    return nodes[id.value];
}

const NodeRecord& Colony::node(NodeId id) const { return const_cast<Colony*>(this)->node(id); }

VmInstance& Colony::vm(VmId id) {
    auto it = vms.find(id);
    if (it == vms.end()) throw NotFoundError("unknown vm " + std::to_string(id.value));
    return it->second;
}

const VmInstance& Colony::vm(VmId id) const { return const_cast<Colony*>(this)->vm(id); }

const ServiceRequest& Colony::request(RequestId id) const {
    auto it = requests.find(id);
    if (it == requests.end()) throw NotFoundError("unknown request " + std::to_string(id.value));
    return it->second;
}

NodeId Colony::add_node(NodeRecord rec) {
    rec.id = NodeId{static_cast<std::uint32_t>(nodes.size())};
    nodes.push_back(std::move(rec));
    return nodes.back().id;
}

std::vector<VmId> Colony::app_vms(RequestId request) const {
    std::vector<VmId> out;
    for (const auto& [id, v] : vms) {
        if (v.request == request) out.push_back(id);
    }
    return out;
}

Resources Colony::free_capacity(NodeId id) const {
    const auto& n = node(id);
    Resources used;
    for (VmId v : n.hosted_vms) used = used + vm(v).entitlement;
    const Resources left = n.capacity() - used;
    return {std::max(0.0, left.cpu), std::max(0.0, left.mem)};
}

void Colony::sync_entry(NodeId id) {
    if (!table.contains(id)) return;
    auto& e = table.entry(id);
    const auto& n = node(id);
    e.state = n.state;
    e.remaining = free_capacity(id);
}

VmId Colony::create_vm(RequestId request, NodeId host, Resources entitlement, std::optional<VmId> parent,
                       double traffic_share) {
    VmInstance v;
    v.id = VmId{next_vm_++};
    v.request = request;
    v.host = host;
    v.entitlement = entitlement;
    v.is_clone = parent.has_value();
    v.parent = parent;
    v.traffic_share = traffic_share;
    const auto& r = this->request(request);
    v.lease_expiry = r.arrival_time + r.lease_duration;
    v.serving_from = now;
    vms.emplace(v.id, v);
    node(host).hosted_vms.push_back(v.id);
    sync_entry(host);
    return v.id;
}

void Colony::move_vm(VmId id, NodeId to) {
    auto& v = vm(id);
    auto& src = node(v.host).hosted_vms;
    src.erase(std::remove(src.begin(), src.end(), id), src.end());
    const NodeId from = v.host;
    v.host = to;
    node(to).hosted_vms.push_back(id);
    if (tunables.migration_latency > 0.0) {
        v.serving_from = now + tunables.migration_latency;
        add_boundary(v.serving_from);
    }
    sync_entry(from);
    sync_entry(to);
}

void Colony::erase_vm(VmId id) {
    auto it = vms.find(id);
    if (it == vms.end()) return;
    const NodeId host = it->second.host;
    auto& hosted = node(host).hosted_vms;
    hosted.erase(std::remove(hosted.begin(), hosted.end(), id), hosted.end());
    vms.erase(it);
    sync_entry(host);
}

std::optional<action::StateChange> Colony::change_power_state(NodeId id, NodeState target) {
    auto& n = node(id);
    const NodeState from = n.state;
    if (from == target) return std::nullopt;
    if (auto done = power::transition_node(n, target, now)) add_boundary(*done);
    sync_entry(id);
    return action::StateChange{id, from, target};
}

std::optional<action::StateChange> Colony::wake_node(NodeId id) {
    auto& n = node(id);
    const NodeState from = n.state;
    if (from == NodeState::Active) return std::nullopt;
    power::wake(n, now);
    if (n.transition) {
        if (n.transition->boot_until > now) add_boundary(n.transition->boot_until);
        add_boundary(n.transition->ready_at);
    }
    sync_entry(id);
    return action::StateChange{id, from, NodeState::Active};
}

void Colony::set_power_state(NodeId id, NodeState target) {
    if (auto change = change_power_state(id, target)) record(*change);
}

std::vector<SimTime> Colony::take_boundaries() {
    std::vector<SimTime> out;
    out.swap(boundaries_);
    return out;
}

Resources Colony::node_usage(NodeId id, const Telemetry& telemetry) const {
    Resources used;
    for (VmId v : node(id).hosted_vms) used = used + telemetry.vm_usage(*this, vm(v));
    return used;
}

Resources Colony::node_utilization(NodeId id, const Telemetry& telemetry) const {
    const auto& n = node(id);
    const Resources used = node_usage(id, telemetry);
    auto frac = [](double u, double cap) { return cap > 0.0 ? std::clamp(u / cap, 0.0, 1.0) : 0.0; };
    return {frac(used.cpu, n.cpu_capacity), frac(used.mem, n.mem_capacity)};
}

void Colony::refresh_entry(NodeId id, const Telemetry& telemetry) {
    if (!table.contains(id)) return;
    const auto& n = node(id);
    auto& e = table.entry(id);
    const Resources u = node_utilization(id, telemetry);
    e.cpu_util = u.cpu;
    e.mem_util = u.mem;
    e.current_power_w = power::billed_power(n, u.cpu, u.mem, now);
    e.state = n.state;
    e.remaining = free_capacity(id);
}

} // namespace antcloud
