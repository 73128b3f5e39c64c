#pragma once

#include <antcloud/actions.hpp>
#include <antcloud/domain.hpp>
#include <antcloud/resource_table.hpp>
#include <antcloud/sla_monitor.hpp>
#include <antcloud/tunables.hpp>

#include <array>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace antcloud {

class Colony;

/// What agents can measure about a running VM. The simulator answers from
/// its performance model; tests script the answers.
class Telemetry {
public:
    virtual ~Telemetry() = default;
    /// Current consumption (GHz-units, GB) over the last window.
    virtual Resources vm_usage(const Colony& colony, const VmInstance& vm) const = 0;
    virtual SlaObservation observe(const Colony& colony, const VmInstance& vm) const = 0;
};

struct AdminNotice {
    SimTime time = 0.0;
    AdminReason reason = AdminReason::ResourceScarcity;
};

struct UserNotice {
    SimTime time = 0.0;
    RequestId request;
    SimTime lease_expiry = 0.0;
};

/// The cloud controller (queen): request queue and notification logs.
struct ControllerState {
    std::deque<RequestId> request_queue;
    std::vector<AdminNotice> admin_log;
    std::vector<UserNotice> user_log;
    std::set<RequestId> lease_warned;
};

/// A machine asking to join, parked at the node it contacted.
struct JoinRequest {
    std::string key; // stable identity of the joining machine
    NodeRecord spec; // id, state and links are assigned at registration
};

/// Shared state every agent reads and mutates: fleet, VMs, requests, the
/// resource table and the controller. Agents run one at a time; every
/// mutation they make is recorded in the action log.
class Colony {
public:
    explicit Colony(Tunables tunables = {});

    // Fleet and placement state.
    std::vector<NodeRecord> nodes; // indexed by NodeId::value
    std::map<VmId, VmInstance> vms;
    std::map<RequestId, ServiceRequest> requests;
    AvailableResourceTable table;
    ControllerState controller;
    std::map<NodeId, std::vector<JoinRequest>> pending_joins;
    std::set<std::string> registered_keys;
    Tunables tunables;

    SimTime now = 0.0;
    std::array<std::uint64_t, 5> slam_observations{}; // indexed by slam_index()

    using Observer = std::function<void(const Colony&, const TimedAction&)>;
    void set_observer(Observer obs) { observer_ = std::move(obs); }

    const std::vector<TimedAction>& log() const { return log_; }
    void record(Action a);

    NodeRecord& node(NodeId id);
    const NodeRecord& node(NodeId id) const;
    bool has_node(NodeId id) const { return id.value < nodes.size(); }
    VmInstance& vm(VmId id);
    const VmInstance& vm(VmId id) const;
    const ServiceRequest& request(RequestId id) const;

    /// Adds a node to the fleet (not to the table). Assigns the next id.
    NodeId add_node(NodeRecord rec);

    /// VMs of one application, ascending id.
    std::vector<VmId> app_vms(RequestId request) const;
    /// Root (non-clone) VM of an application.
    VmId root_of(const VmInstance& vm) const { return vm.is_clone ? *vm.parent : vm.id; }

    /// Entitlement headroom computed from hosted VMs.
    Resources free_capacity(NodeId id) const;

    /// Placement primitives. They keep hosted lists and table columns in
    /// sync and do not log; callers record the matching action.
    VmId create_vm(RequestId request, NodeId host, Resources entitlement, std::optional<VmId> parent,
                   double traffic_share);
    void move_vm(VmId vm, NodeId to);
    void erase_vm(VmId vm);

    /// Applies one power change without logging it. Returns the action to
    /// record, or nullopt when the node is already in `target`.
    std::optional<action::StateChange> change_power_state(NodeId id, NodeState target);
    /// Wakes a node to Active through the required steps, without logging.
    std::optional<action::StateChange> wake_node(NodeId id);
    /// change_power_state + record.
    void set_power_state(NodeId id, NodeState target);

    /// Instants at which piecewise-constant quantities change (transition
    /// phases, migrations finishing). The engine drains them into events.
    std::vector<SimTime> take_boundaries();
    void add_boundary(SimTime t) { boundaries_.push_back(t); }

    /// Utilization fractions (cpu, mem) of a node from measured VM usage.
    Resources node_utilization(NodeId id, const Telemetry& telemetry) const;
    Resources node_usage(NodeId id, const Telemetry& telemetry) const;

    /// Updates the visited node's table row from what the ant measures.
    void refresh_entry(NodeId id, const Telemetry& telemetry);

    void count_observation(SlamCode c) { ++slam_observations[slam_index(c)]; }

private:
    void sync_entry(NodeId id);

    std::vector<TimedAction> log_;
    Observer observer_;
    std::vector<SimTime> boundaries_;
    std::uint32_t next_vm_ = 0;
};

} // namespace antcloud
