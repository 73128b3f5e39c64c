#pragma once

// The colony's agents. Workers allocate at the controller; testers, scouts
// and cleaners walk the node graph and act on the node they stand on.

#include <antcloud/colony.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace antcloud::ants {

using Rng = std::mt19937_64;

/// Uniform index in [0, n) by rejection sampling; identical on every
/// standard library since mt19937_64 output is fully specified.
std::size_t pick_index(Rng& rng, std::size_t n);

enum class AntKind : std::uint8_t { Worker, Tester, Scout, Cleaner };

std::string_view to_string(AntKind k);

struct AntAgent {
    std::uint32_t id = 0;
    AntKind kind = AntKind::Tester;
    std::set<NodeId> visited;
    std::optional<NodeId> current;
    SimTime spawn_time = 0.0;
};

/// Chooses the next node for a traversing ant: a random unvisited
/// neighbour, else a random unvisited node anywhere, else (everything
/// covered) the visited list is cleared and the choice repeated once.
/// A one-node fleet keeps the ant in place.
NodeId next_hop(AntAgent& ant, const Colony& colony, Rng& rng);

/// Moves the ant and marks the node visited.
void arrive(AntAgent& ant, NodeId node);

enum class AllocationOutcome : std::uint8_t { Deployed, Rejected };

struct AllocationResult {
    AllocationOutcome outcome = AllocationOutcome::Rejected;
    std::optional<VmId> vm;
};

/// Places a dequeued request as a basic VM on the node under the
/// allocation pointer, advancing the pointer when that node fills up.
AllocationResult worker_allocate(Colony& colony, RequestId request);

/// Dequeues and allocates every pending request in FIFO order.
std::vector<AllocationResult> drain_queue(Colony& colony);

/// Keeps `warm_pool_size` non-active entries after the pointer in Standby
/// and turns later standby entries Off. Active entries are left alone and
/// do not count toward the pool.
void maintain_warm_pool(Colony& colony);

/// Tester ant visit: refresh the node's row, take a SLAM snapshot of its
/// VMs, remediate if overloaded, consolidate if underloaded.
std::vector<Action> tester_visit(Colony& colony, NodeId node, const Telemetry& telemetry);

/// Critical band: clone (22) or migrate-else-clone (21) anywhere in the
/// table, waking a standby target if needed.
std::vector<Action> handle_critical(Colony& colony, VmId vm, SlamCode code, const Telemetry& telemetry);

/// Recommended band: only active nodes above the VM's host are searched and
/// no node is ever woken.
std::vector<Action> handle_recommended(Colony& colony, VmId vm, SlamCode code, const Telemetry& telemetry);

/// All-or-nothing evacuation of an underloaded node into nodes above it.
/// Returns true when the node was evacuated and put in Standby.
bool try_consolidate(Colony& colony, NodeId node, const Telemetry& telemetry);

/// Scout ant visit: registers every join request parked at the node.
std::vector<Action> scout_visit(Colony& colony, NodeId node);

/// Registers a joining machine at its sorted table position, in Standby.
/// `contact` is the node the machine asked; nullopt for admin additions
/// handled by the controller. Duplicate keys are ignored.
std::optional<NodeId> register_node(Colony& colony, const JoinRequest& join, std::optional<NodeId> contact);

/// Moves join requests parked at a dead node to another live node.
void redirect_joins(Colony& colony, NodeId dead);

/// Cleaner ant visit: failure detection, clone reclamation, lease warnings
/// and lease expiry.
std::vector<Action> cleaner_visit(Colony& colony, NodeId node, const Telemetry& telemetry);

/// Declares a node failed, drops it from the table and re-queues the
/// requests whose root VM it hosted at the head of the queue.
void mark_failed(Colony& colony, NodeId node);

} // namespace antcloud::ants
