#pragma once

#include <antcloud/domain.hpp>

#include <optional>
#include <vector>

namespace antcloud::power {

/// Linear utilization model by state: Active draws base + u_cpu*cpu_peak +
/// u_mem*mem_peak, Standby draws its standby wattage, Off and Failed draw 0.
/// Throws DomainError when a utilization lies outside [0, 1].
double instantaneous_power(const NodeRecord& node, double u_cpu, double u_mem);

/// Power actually drawn at `now`, accounting for crashes and in-flight
/// transitions. A transition is billed at the higher of its endpoint powers.
double billed_power(const NodeRecord& node, double u_cpu, double u_mem, SimTime now);

/// Per-node and fleet energy totals in joules.
class EnergyAccumulator {
public:
    double add(NodeId node, double watts, SimTime from, SimTime to);

    double fleet_joules() const { return fleet_; }
    double node_joules(NodeId node) const;
    const std::vector<double>& per_node() const { return per_node_; }

private:
    std::vector<double> per_node_;
    double fleet_ = 0.0;
};

/// Bills `node` over [from, to] at constant utilization and returns the
/// joules added. Throws EngineError for a negative interval.
double accumulate_energy(EnergyAccumulator& acc, const NodeRecord& node, SimTime from, SimTime to,
                         double u_cpu, double u_mem);

/// Performs one legal power-state step: Active<->Standby or Off<->Standby.
/// Downward steps are immediate; Standby->Active takes wake_latency and
/// Off->Standby boot_latency. Returns the completion instant for timed steps.
///
/// Throws PolicyViolationError for illegal steps (Active->Off, any step out
/// of Failed) and for leaving Active while VMs are hosted.
std::optional<SimTime> transition_node(NodeRecord& node, NodeState target, SimTime now);

/// Brings a node to Active through whatever legal steps it needs
/// (Off->Standby->Active chains boot and wake latency). Returns the instant
/// the node becomes operational, or nullopt when it already is Active.
std::optional<SimTime> wake(NodeRecord& node, SimTime now);

} // namespace antcloud::power
