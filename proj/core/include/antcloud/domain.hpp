#pragma once

// Core data model shared by every agent: nodes, VMs, requests and the
// SLA-monitor verdict lattice.

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace antcloud {

template <class Tag>
struct StrongId {
    std::uint32_t value = 0;

    constexpr StrongId() = default;
    constexpr explicit StrongId(std::uint32_t v) : value(v) {}

    friend constexpr auto operator<=>(StrongId, StrongId) = default;
    friend std::ostream& operator<<(std::ostream& os, StrongId id) { return os << id.value; }
};

using NodeId = StrongId<struct NodeTag>;
using VmId = StrongId<struct VmTag>;
using RequestId = StrongId<struct RequestTag>;

/// Seconds of simulated time.
using SimTime = double;

inline constexpr SimTime kSecondsPerDay = 86400.0;

/// A (cpu, memory) pair in GHz-units and GB.
struct Resources {
    double cpu = 0.0;
    double mem = 0.0;

    friend constexpr bool operator==(const Resources&, const Resources&) = default;
    constexpr Resources operator+(const Resources& o) const { return {cpu + o.cpu, mem + o.mem}; }
    constexpr Resources operator-(const Resources& o) const { return {cpu - o.cpu, mem - o.mem}; }
    constexpr Resources operator*(double k) const { return {cpu * k, mem * k}; }
    /// Componentwise >=.
    constexpr bool covers(const Resources& need) const { return cpu >= need.cpu && mem >= need.mem; }
};

enum class NodeState : std::uint8_t { Active, Standby, Off, Failed };

std::string_view to_string(NodeState s);

struct PowerProfile {
    double p_base = 60.0;       // W, non-CPU/non-memory components while active
    double p_cpu_peak = 100.0;  // W, CPU at 100% utilization
    double p_mem_peak = 8.0;    // W, memory at 100% utilization
    double p_standby = 5.0;     // W
    double wake_latency = 30.0; // s, Standby -> Active
    double boot_latency = 120.0;// s, Off -> Standby

    friend bool operator==(const PowerProfile&, const PowerProfile&) = default;
};

/// Throws InvalidProfileError when the profile breaks its invariants.
void validate(const PowerProfile& profile);

/// In-flight power-state change. The logical state flips when the
/// transition starts; the node is operational only from `ready_at`.
struct PowerTransition {
    NodeState from = NodeState::Off;
    SimTime boot_until = 0.0; // end of the Off->Standby phase (== start when there is none)
    SimTime ready_at = 0.0;
    std::uint64_t serial = 0;
};

struct NodeRecord {
    NodeId id;
    std::string name;
    double cpu_capacity = 0.0;
    double mem_capacity = 0.0;
    PowerProfile power;
    NodeState state = NodeState::Off;
    std::vector<VmId> hosted_vms;
    std::vector<NodeId> neighbor_ids;
    SimTime last_seen = 0.0;

    std::optional<PowerTransition> transition;
    std::uint64_t transition_serial = 0;
    // Ground truth for fault injection; agents only learn of it through silence.
    bool crashed = false;

    Resources capacity() const { return {cpu_capacity, mem_capacity}; }
    bool ready(SimTime now) const { return !transition || transition->ready_at <= now; }
    bool responsive() const { return !crashed && state != NodeState::Failed; }
};

struct ServiceRequest {
    RequestId id;
    double thput_target = 0.8; // fraction in (0, 1]
    double rtime_target = 1.0; // seconds
    std::string app_label;
    std::string os_label;
    SimTime lease_duration = 30 * kSecondsPerDay;
    SimTime arrival_time = 0.0;
    std::size_t workload_index = 0; // index into the workload's per-application traces
};

/// Throws ValidationError when the request breaks its invariants.
void validate(const ServiceRequest& request);

enum class SlamCode : std::uint8_t {
    Ok = 0,
    RecMigrate = 11,
    RecClone = 12,
    CritMigrate = 21,
    CritClone = 22,
};

inline constexpr SlamCode kAllSlamCodes[] = {SlamCode::Ok, SlamCode::RecMigrate, SlamCode::RecClone,
                                             SlamCode::CritMigrate, SlamCode::CritClone};

constexpr int slam_value(SlamCode c) { return static_cast<int>(c); }
constexpr bool is_critical(SlamCode c) { return c == SlamCode::CritMigrate || c == SlamCode::CritClone; }
constexpr bool is_recommended(SlamCode c) { return c == SlamCode::RecMigrate || c == SlamCode::RecClone; }
/// Position of the code in kAllSlamCodes.
std::size_t slam_index(SlamCode c);

struct VmInstance {
    VmId id;
    RequestId request;
    NodeId host;
    Resources entitlement;
    bool is_clone = false;
    std::optional<VmId> parent;
    double traffic_share = 1.0;
    SimTime lease_expiry = 0.0;
    SlamCode slam = SlamCode::Ok;
    // Migration latency support: the VM serves no traffic before this instant.
    SimTime serving_from = 0.0;
};

} // namespace antcloud

template <class Tag>
struct std::hash<antcloud::StrongId<Tag>> {
    std::size_t operator()(antcloud::StrongId<Tag> id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
