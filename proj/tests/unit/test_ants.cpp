#include "fixtures.hpp"
#include "replay.hpp"

#include <antcloud/ants.hpp>
#include <antcloud/errors.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace {

using namespace antcloud;
using namespace fixture;
using Strings = std::vector<std::string>;

// ---- traversal -------------------------------------------------------------

TEST(NextHop, OnlyUnvisitedNeighbourIsChosen) {
    auto c = fleet({A, A, A, A});
    c.node(NodeId{0}).neighbor_ids = {NodeId{1}, NodeId{2}};
    ants::AntAgent ant;
    ants::arrive(ant, NodeId{0});
    ant.visited.insert(NodeId{1});
    ants::Rng rng(5);
    EXPECT_EQ(ants::next_hop(ant, c, rng), NodeId{2});
}

TEST(NextHop, TeleportsWhenNeighboursAreVisited) {
    auto c = fleet({A, A, A, A});
    c.node(NodeId{0}).neighbor_ids = {NodeId{1}, NodeId{2}};
    ants::AntAgent ant;
    ants::arrive(ant, NodeId{0});
    ant.visited.insert(NodeId{1});
    ant.visited.insert(NodeId{2});
    ants::Rng rng(5);
    EXPECT_EQ(ants::next_hop(ant, c, rng), NodeId{3});
}

TEST(NextHop, ClearsVisitedOnceEverythingIsCovered) {
    auto c = fleet({A, A, A});
    ants::AntAgent ant;
    for (std::uint32_t i = 0; i < 3; ++i) ant.visited.insert(NodeId{i});
    ant.current = NodeId{0};
    ants::Rng rng(9);
    const NodeId next = ants::next_hop(ant, c, rng);
    EXPECT_NE(next, NodeId{0});
    EXPECT_TRUE(ant.visited.empty());
}

TEST(NextHop, SingleNodeStaysInPlace) {
    auto c = fleet({A});
    ants::AntAgent ant;
    ants::arrive(ant, NodeId{0});
    ants::Rng rng(1);
    EXPECT_EQ(ants::next_hop(ant, c, rng), NodeId{0});
}

// Every hop of a seeded walk lies in the candidate set the rule allows, and
// the walk is reproducible.
TEST(NextHop, SeededWalkStaysInsideTheAllowedChoices) {
    auto c = fleet({A, A, A, A, A, A});
    c.node(NodeId{0}).neighbor_ids.push_back(NodeId{3});
    c.node(NodeId{3}).neighbor_ids.push_back(NodeId{0});
    auto walk = [&](std::uint64_t seed) {
        ants::AntAgent ant;
        ants::arrive(ant, NodeId{0});
        ants::Rng rng(seed);
        std::vector<NodeId> trace;
        for (int i = 0; i < 40; ++i) {
            const NodeId here = *ant.current;
            std::set<NodeId> allowed;
            for (NodeId n : c.node(here).neighbor_ids) {
                if (!ant.visited.contains(n)) allowed.insert(n);
            }
            if (allowed.empty()) {
                for (const auto& n : c.nodes) {
                    if (n.id != here && !ant.visited.contains(n.id)) allowed.insert(n.id);
                }
            }
            if (allowed.empty()) {
                for (NodeId n : c.node(here).neighbor_ids) allowed.insert(n);
            }
            const NodeId next = ants::next_hop(ant, c, rng);
            EXPECT_TRUE(allowed.contains(next)) << "hop " << i;
            ants::arrive(ant, next);
            trace.push_back(next);
        }
        return trace;
    };
    EXPECT_EQ(walk(17), walk(17));
}

TEST(PickIndex, EmptyRangeThrows) {
    ants::Rng rng(1);
    EXPECT_THROW(ants::pick_index(rng, 0), DomainError);
}

// ---- worker ----------------------------------------------------------------

TEST(Worker, DeploysOnThePointedNode) {
    auto c = fleet({A}, 2.0, 4.0);
    const auto r = add_request(c);
    const auto res = ants::worker_allocate(c, r);
    ASSERT_EQ(res.outcome, ants::AllocationOutcome::Deployed);
    EXPECT_EQ(c.vm(*res.vm).host, NodeId{0});
    EXPECT_EQ(c.table.allocation_ptr(), 0u);
}

TEST(Worker, RejectsWhenThePointerIsInvalid) {
    auto c = fleet({A});
    c.table.set_allocation_ptr(std::nullopt);
    const auto res = ants::worker_allocate(c, add_request(c));
    EXPECT_EQ(res.outcome, ants::AllocationOutcome::Rejected);
    EXPECT_EQ(log_text(c), Strings{"reject request=0"});
}

TEST(Worker, FullNodeMovesThePointerAndRetries) {
    auto c = fleet({A, S}, 2.0, 2.0);
    place(c, NodeId{0}, {1.5, 1.5});
    const auto res = ants::worker_allocate(c, add_request(c));
    ASSERT_EQ(res.outcome, ants::AllocationOutcome::Deployed);
    EXPECT_EQ(c.vm(*res.vm).host, NodeId{1});
    EXPECT_EQ(c.table.allocation_ptr(), 1u);
    EXPECT_EQ(log_text(c), (Strings{"pointer from=0 to=1", "state node=1 from=standby to=active",
                                    "notify_admin reason=few_resources", "deploy request=1 vm=1 node=1"}));
}

TEST(Worker, FillingTheLastNodeNotifiesScarcity) {
    auto c = fleet({A}, 1.0, 1.0);
    ants::worker_allocate(c, add_request(c));
    EXPECT_FALSE(c.table.allocation_ptr());
    EXPECT_EQ(log_text(c), (Strings{"deploy request=0 vm=0 node=0", "pointer from=0 to=none",
                                    "notify_admin reason=resource_scarcity"}));
    ASSERT_EQ(c.controller.admin_log.size(), 1u);
    EXPECT_EQ(c.controller.admin_log[0].reason, AdminReason::ResourceScarcity);
}

TEST(Worker, DrainQueueIsFifo) {
    auto c = fleet({A, S, S}, 2.0, 2.0);
    for (int i = 0; i < 5; ++i) c.controller.request_queue.push_back(add_request(c));
    const auto results = ants::drain_queue(c);
    ASSERT_EQ(results.size(), 5u);
    EXPECT_TRUE(c.controller.request_queue.empty());
    std::vector<std::uint32_t> order;
    for (const auto& r : results) order.push_back(c.vm(*r.vm).request.value);
    EXPECT_EQ(order, (std::vector<std::uint32_t>{0, 1, 2, 3, 4}));
}

// ---- warm pool -------------------------------------------------------------

TEST(WarmPool, ThreeStandbyAfterThePointerRestOff) {
    auto c = fleet({A, O, O, O, S, S});
    ants::maintain_warm_pool(c);
    const std::vector<NodeState> want{A, S, S, S, O, O};
    for (std::uint32_t i = 0; i < 6; ++i) EXPECT_EQ(c.node(NodeId{i}).state, want[i]) << i;
    EXPECT_TRUE(c.controller.admin_log.empty());
}

TEST(WarmPool, ShortPoolNotifiesFewResources) {
    auto c = fleet({A, A, A, A, A, O});
    c.table.set_allocation_ptr(4);
    ants::maintain_warm_pool(c);
    EXPECT_EQ(c.node(NodeId{5}).state, S);
    EXPECT_EQ(log_text(c), (Strings{"state node=5 from=off to=standby", "notify_admin reason=few_resources"}));
}

TEST(WarmPool, InvalidPointerChangesNothing) {
    auto c = fleet({A, O, O});
    c.table.set_allocation_ptr(std::nullopt);
    ants::maintain_warm_pool(c);
    EXPECT_TRUE(c.log().empty());
    EXPECT_EQ(c.node(NodeId{1}).state, O);
}

// ---- tester ----------------------------------------------------------------

TEST(Tester, OverloadedNodeSendsSlam22ToTheCriticalHandler) {
    auto c = fleet({A, S, O});
    FixedTelemetry tel;
    const VmId vm = place(c, NodeId{0});
    tel.usage[vm] = {3.8, 0.5};
    tel.obs[vm] = {1.0, 1.0, 0.0};
    ants::tester_visit(c, NodeId{0}, tel);
    EXPECT_EQ(c.vm(vm).slam, SlamCode::CritClone);
    EXPECT_EQ(log_text(c), (Strings{"clone source=0 clone=1 parent=0 node=1 cpu=1.9 mem=0.25",
                                    "state node=1 from=standby to=active", "state node=2 from=off to=standby",
                                    "notify_admin reason=few_resources"}));
    EXPECT_DOUBLE_EQ(c.vm(vm).traffic_share, 0.5);
    EXPECT_DOUBLE_EQ(c.vm(VmId{1}).traffic_share, 0.5);
}

TEST(Tester, UnderloadedNodeIsConsolidatedUpstream) {
    auto c = fleet({A, A, S, S});
    FixedTelemetry tel;
    const VmId a = place(c, NodeId{1});
    const VmId b = place(c, NodeId{1});
    tel.usage[a] = {0.8, 1.2};
    tel.usage[b] = {0.8, 1.2};
    ants::tester_visit(c, NodeId{1}, tel);
    EXPECT_EQ(log_text(c), (Strings{"migrate vm=0 from=1 to=0", "migrate vm=1 from=1 to=0", "consolidate node=1 vms=2",
                                    "state node=1 from=active to=standby", "state node=3 from=standby to=off"}));
    EXPECT_TRUE(c.node(NodeId{1}).hosted_vms.empty());
}

TEST(Tester, ConsolidationIsAllOrNothing) {
    auto c = fleet({A, A, S});
    FixedTelemetry tel;
    place(c, NodeId{0}, {2.5, 1.0});
    const VmId a = place(c, NodeId{1});
    const VmId b = place(c, NodeId{1});
    tel.usage[a] = {0.8, 1.2};
    tel.usage[b] = {0.8, 1.2};
    ants::tester_visit(c, NodeId{1}, tel);
    EXPECT_TRUE(c.log().empty());
    EXPECT_EQ(c.node(NodeId{1}).hosted_vms.size(), 2u);
}

TEST(Tester, PointedNodeIsNeverConsolidated) {
    auto c = fleet({A, A});
    c.table.set_allocation_ptr(1);
    place(c, NodeId{1});
    FixedTelemetry tel;
    ants::tester_visit(c, NodeId{1}, tel);
    EXPECT_TRUE(c.log().empty());
}

TEST(Tester, NodeStillWakingIsSkipped) {
    auto c = fleet({S, S});
    c.now = 10.0;
    c.wake_node(NodeId{0});
    const VmId vm = place(c, NodeId{0});
    FixedTelemetry tel;
    tel.usage[vm] = {4.0, 1.0};
    tel.obs[vm] = {5.0, 0.1, 0.0};
    ants::tester_visit(c, NodeId{0}, tel);
    EXPECT_TRUE(c.log().empty());
}

// ---- critical and recommended handlers -------------------------------------

struct HandlerRig {
    Colony c;
    FixedTelemetry tel;
    VmId vm;
};

/// Node 0 hosts one VM entitled (1, 1) and using (1, 1); node 1 has the
/// given capacity and is Active.
HandlerRig rig(Resources target_capacity, NodeState target_state = A, bool vm_on_head = true) {
    HandlerRig r{fleet({A, target_state}), {}, {}};
    r.c.node(NodeId{1}).cpu_capacity = target_capacity.cpu;
    r.c.node(NodeId{1}).mem_capacity = target_capacity.mem;
    r.c.table = sort_nodes(r.c.nodes, r.c.tunables.sort_weights);
    r.vm = place(r.c, vm_on_head ? r.c.table.at(0).node : r.c.table.at(1).node);
    r.tel.usage[r.vm] = {1.0, 1.0};
    return r;
}

TEST(Critical, Slam22ClonesAtHalfTheMeasuredUsage) {
    auto r = rig({0.5, 0.5});
    ants::handle_critical(r.c, r.vm, SlamCode::CritClone, r.tel);
    const NodeId target = r.c.table.at(1).node;
    EXPECT_EQ(log_text(r.c), Strings{"clone source=0 clone=1 parent=0 node=" + std::to_string(target.value) +
                                     " cpu=0.5 mem=0.5"});
    EXPECT_DOUBLE_EQ(r.c.vm(r.vm).traffic_share, 0.5);
    EXPECT_DOUBLE_EQ(r.c.vm(VmId{1}).traffic_share, 0.5);
}

TEST(Critical, Slam21MigratesWhenThirtyPercentHeadroomExists) {
    auto r = rig({1.3, 1.3});
    const NodeId target = r.c.table.at(1).node;
    ants::handle_critical(r.c, r.vm, SlamCode::CritMigrate, r.tel);
    EXPECT_EQ(r.c.vm(r.vm).host, target);
    EXPECT_EQ(r.c.log().size(), 1u);
    EXPECT_EQ(kind_name(r.c.log()[0].action), "migrate");
}

TEST(Critical, Slam21FallsBackToAClone) {
    auto r = rig({0.5, 0.5});
    ants::handle_critical(r.c, r.vm, SlamCode::CritMigrate, r.tel);
    ASSERT_EQ(r.c.log().size(), 1u);
    EXPECT_EQ(kind_name(r.c.log()[0].action), "clone");
    EXPECT_TRUE(r.c.vm(VmId{1}).is_clone);
}

TEST(Critical, NoQualifyingNodeNotifiesScarcity) {
    auto r = rig({0.4, 0.4});
    const NodeId host = r.c.vm(r.vm).host;
    ants::handle_critical(r.c, r.vm, SlamCode::CritClone, r.tel);
    EXPECT_EQ(log_text(r.c), Strings{"notify_admin reason=resource_scarcity"});
    EXPECT_EQ(r.c.vm(r.vm).host, host);
    EXPECT_EQ(r.c.vms.size(), 1u);
}

TEST(Critical, StandbyTargetWithoutSuccessorNotifiesFewResources) {
    auto c = fleet({A, S});
    FixedTelemetry tel;
    const VmId vm = place(c, NodeId{0});
    tel.usage[vm] = {1.0, 1.0};
    ants::handle_critical(c, vm, SlamCode::CritClone, tel);
    EXPECT_EQ(log_text(c), (Strings{"clone source=0 clone=1 parent=0 node=1 cpu=0.5 mem=0.5",
                                    "state node=1 from=standby to=active", "notify_admin reason=few_resources",
                                    "notify_admin reason=few_resources"}));
}

TEST(Recommended, Slam11MigratesUpstream) {
    auto r = rig({1.3, 1.3}, A, false);
    ants::handle_recommended(r.c, r.vm, SlamCode::RecMigrate, r.tel);
    EXPECT_EQ(r.c.vm(r.vm).host, r.c.table.at(0).node);
}

TEST(Recommended, Slam12ClonesOnExactlyHalfHeadroom) {
    auto r = rig({0.5, 0.5}, A, false);
    ants::handle_recommended(r.c, r.vm, SlamCode::RecClone, r.tel);
    ASSERT_EQ(r.c.log().size(), 1u);
    EXPECT_EQ(kind_name(r.c.log()[0].action), "clone");
    EXPECT_EQ(r.c.vm(VmId{1}).host, r.c.table.at(0).node);
}

TEST(Recommended, VmOnTheTableHeadHasNowhereToGo) {
    auto r = rig({8.0, 8.0});
    ants::handle_recommended(r.c, r.vm, SlamCode::RecMigrate, r.tel);
    ants::handle_recommended(r.c, r.vm, SlamCode::RecClone, r.tel);
    EXPECT_TRUE(r.c.log().empty());
}

TEST(Recommended, NeverWakesAStandbyNode) {
    auto c = fleet({S, A});
    FixedTelemetry tel;
    const VmId vm = place(c, NodeId{1});
    tel.usage[vm] = {1.0, 1.0};
    ants::handle_recommended(c, vm, SlamCode::RecClone, tel);
    EXPECT_TRUE(c.log().empty());
    EXPECT_EQ(c.node(NodeId{0}).state, S);
}

TEST(Recommended, PropertyNeverChangesAnyPowerState) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const NodeState choices[] = {A, S, O};
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<NodeState> states;
        const int n = 2 + static_cast<int>(u(rng) * 6);
        for (int i = 0; i < n; ++i) states.push_back(choices[static_cast<int>(u(rng) * 3)]);
        states[0] = A;
        auto c = fleet(states);
        FixedTelemetry tel;
        std::vector<VmId> vms;
        for (int i = 0; i < n; ++i) {
            if (states[i] != A || u(rng) < 0.3) continue;
            const VmId vm = place(c, NodeId{static_cast<std::uint32_t>(i)});
            tel.usage[vm] = {2.0 * u(rng), 2.0 * u(rng)};
            vms.push_back(vm);
        }
        std::vector<NodeState> before;
        for (const auto& node : c.nodes) before.push_back(node.state);
        for (VmId vm : vms) {
            if (!c.vms.contains(vm)) continue;
            ants::handle_recommended(c, vm, u(rng) < 0.5 ? SlamCode::RecMigrate : SlamCode::RecClone, tel);
        }
        for (std::size_t i = 0; i < c.nodes.size(); ++i) EXPECT_EQ(c.nodes[i].state, before[i]);
        for (const auto& a : c.log()) EXPECT_NE(kind_name(a.action), "state");
    }
}

// ---- scout -----------------------------------------------------------------

JoinRequest joiner(const std::string& key, double p_cpu) { return {key, machine(4.0, 8.0, p_cpu)}; }

TEST(Scout, RegistersAtTheSortedPosition) {
    auto c = fleet({A, S, S, S, O});
    c.pending_joins[NodeId{0}].push_back(joiner("new", 102.5));
    ants::scout_visit(c, NodeId{0});
    EXPECT_EQ(log_text(c), Strings{"register node=5 index=3 by=scout"});
    EXPECT_EQ(c.table.at(3).node, NodeId{5});
    EXPECT_EQ(c.node(NodeId{5}).state, S);
    EXPECT_TRUE(c.table.is_sorted());
    const auto& nb = c.node(NodeId{0}).neighbor_ids;
    EXPECT_NE(std::find(nb.begin(), nb.end(), NodeId{5}), nb.end());
    EXPECT_TRUE(c.pending_joins.empty());
}

TEST(Scout, NothingPendingIsANoOp) {
    auto c = fleet({A, S});
    EXPECT_TRUE(ants::scout_visit(c, NodeId{1}).empty());
}

TEST(Scout, JoinParkedAtACrashedNodeMovesToALiveNeighbour) {
    auto c = fleet({A, S, S, S});
    c.pending_joins[NodeId{2}].push_back(joiner("late", 100.5));
    c.node(NodeId{2}).crashed = true;
    ants::redirect_joins(c, NodeId{2});
    EXPECT_EQ(log_text(c), Strings{"join_redirect key=late from=2 to=1"});
    ants::scout_visit(c, NodeId{1});
    EXPECT_EQ(c.nodes.size(), 5u);
}

TEST(Scout, DuplicateRegistrationIsIdempotent) {
    auto c = fleet({A});
    EXPECT_TRUE(ants::register_node(c, joiner("k", 100.0), std::nullopt));
    EXPECT_FALSE(ants::register_node(c, joiner("k", 100.0), std::nullopt));
    EXPECT_EQ(c.nodes.size(), 2u);
    EXPECT_EQ(c.log().size(), 1u);
}

TEST(Scout, ReSortKeepsThePointerOnItsNode) {
    auto c = fleet({A, A, S});
    c.table.set_allocation_ptr(1);
    ants::register_node(c, joiner("fast", 50.0), std::nullopt);
    EXPECT_EQ(c.table.pointed_node(), NodeId{1});
    EXPECT_EQ(c.table.at(0).node, NodeId{3});
}

// ---- cleaner ---------------------------------------------------------------

TEST(Cleaner, IdleCloneIsReclaimedAndShareRestored) {
    auto c = fleet({A, A});
    FixedTelemetry tel;
    const VmId root = place(c, NodeId{0});
    const VmId clone = c.create_vm(c.vm(root).request, NodeId{1}, {0.5, 0.5}, root, 0.5);
    c.vm(root).traffic_share = 0.5;
    tel.usage[root] = {0.7, 0.5};
    ants::cleaner_visit(c, NodeId{1}, tel);
    EXPECT_EQ(log_text(c), Strings{"remove_clone clone=1 parent=0 node=1"});
    EXPECT_FALSE(c.vms.contains(clone));
    EXPECT_DOUBLE_EQ(c.vm(root).traffic_share, 1.0);
}

TEST(Cleaner, BusyParentKeepsItsClone) {
    auto c = fleet({A, A});
    FixedTelemetry tel;
    const VmId root = place(c, NodeId{0});
    c.create_vm(c.vm(root).request, NodeId{1}, {0.5, 0.5}, root, 0.5);
    c.vm(root).traffic_share = 0.5;
    tel.usage[root] = {0.95, 0.5};
    ants::cleaner_visit(c, NodeId{1}, tel);
    EXPECT_TRUE(c.log().empty());
}

TEST(Cleaner, ComfortableCloneIsReclaimed) {
    auto c = fleet({A, A});
    FixedTelemetry tel;
    const VmId root = place(c, NodeId{0});
    c.requests[c.vm(root).request].thput_target = 0.7;
    const VmId clone = c.create_vm(c.vm(root).request, NodeId{1}, {0.5, 0.5}, root, 0.5);
    c.vm(root).traffic_share = 0.5;
    tel.usage[root] = {0.3, 0.3};
    tel.usage[clone] = {0.3, 0.3};
    tel.obs[clone] = {0.6, 0.95, 0.0};
    ants::cleaner_visit(c, NodeId{1}, tel);
    EXPECT_EQ(log_text(c), Strings{"remove_clone clone=1 parent=0 node=1"});
}

TEST(Cleaner, LeaseEndingWithinAWeekWarnsOnce) {
    auto c = fleet({A});
    FixedTelemetry tel;
    place(c, NodeId{0}, {1.0, 1.0}, 3 * kSecondsPerDay);
    ants::cleaner_visit(c, NodeId{0}, tel);
    c.now = 60.0;
    ants::cleaner_visit(c, NodeId{0}, tel);
    EXPECT_EQ(log_text(c), Strings{"notify_user request=0 lease_expiry=259200"});
    EXPECT_EQ(c.controller.user_log.size(), 1u);
}

TEST(Cleaner, ExpiredVmIsRemoved) {
    auto c = fleet({A});
    FixedTelemetry tel;
    place(c, NodeId{0}, {1.0, 1.0}, 100.0);
    c.now = 200.0;
    ants::cleaner_visit(c, NodeId{0}, tel);
    EXPECT_EQ(log_text(c), Strings{"remove_vm vm=0 node=0"});
    EXPECT_TRUE(c.vms.empty());
}

TEST(Cleaner, ExpiredRootTakesItsClonesAlong) {
    auto c = fleet({A, A});
    FixedTelemetry tel;
    const VmId root = place(c, NodeId{0}, {1.0, 1.0}, 100.0);
    c.create_vm(c.vm(root).request, NodeId{1}, {0.5, 0.5}, root, 0.5);
    c.vm(root).traffic_share = 0.5;
    tel.usage[VmId{1}] = {0.4, 0.4};
    tel.obs[VmId{1}] = {0.9, 0.9, 0.0};
    c.now = 200.0;
    ants::cleaner_visit(c, NodeId{0}, tel);
    EXPECT_EQ(log_text(c), (Strings{"remove_vm vm=0 node=0", "remove_vm vm=1 node=1"}));
}

TEST(Cleaner, SilentNodeWithinTimeoutIsKept) {
    auto c = fleet({A, A});
    FixedTelemetry tel;
    c.node(NodeId{1}).crashed = true;
    c.node(NodeId{1}).last_seen = 50.0;
    c.now = 70.0;
    ants::cleaner_visit(c, NodeId{1}, tel);
    EXPECT_TRUE(c.log().empty());
    EXPECT_TRUE(c.table.contains(NodeId{1}));
}

TEST(Cleaner, SilentNodePastTimeoutIsMarkedFailedAndItsRequestsRequeued) {
    auto c = fleet({A, A});
    FixedTelemetry tel;
    place(c, NodeId{1});
    place(c, NodeId{1});
    c.node(NodeId{1}).crashed = true;
    c.node(NodeId{1}).last_seen = 50.0;
    c.now = 90.0;
    ants::cleaner_visit(c, NodeId{1}, tel);
    EXPECT_EQ(log_text(c), (Strings{"mark_failed node=1", "requeue request=0", "requeue request=1"}));
    EXPECT_FALSE(c.table.contains(NodeId{1}));
    EXPECT_EQ(c.node(NodeId{1}).state, NodeState::Failed);
    EXPECT_EQ(c.controller.request_queue, (std::deque<RequestId>{RequestId{0}, RequestId{1}}));
    EXPECT_TRUE(c.vms.empty());
}

TEST(Cleaner, FailureOfThePointedNodeWakesItsSuccessor) {
    auto c = fleet({A, S, S});
    FixedTelemetry tel;
    c.node(NodeId{0}).crashed = true;
    c.now = 100.0;
    ants::cleaner_visit(c, NodeId{0}, tel);
    EXPECT_EQ(c.table.pointed_node(), NodeId{1});
    EXPECT_EQ(log_text(c), (Strings{"mark_failed node=0", "state node=1 from=standby to=active",
                                    "notify_admin reason=few_resources"}));
}

// ---- invariants over randomized replays ------------------------------------

TEST(AntsProperty, CapacityAndSharesHoldAfterEveryAction) {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        int violations = 0;
        replay::run_library(replay::generate(seed), [&](const Colony& c, const TimedAction&) {
            for (const auto& node : c.nodes) {
                Resources used;
                for (VmId v : node.hosted_vms) used = used + c.vm(v).entitlement;
                if (used.cpu > node.cpu_capacity + 1e-9 || used.mem > node.mem_capacity + 1e-9) ++violations;
            }
            std::map<RequestId, double> share;
            for (const auto& [id, vm] : c.vms) share[vm.request] += vm.traffic_share;
            for (const auto& [r, s] : share) {
                if (std::abs(s - 1.0) > 1e-9) ++violations;
            }
        });
        EXPECT_EQ(violations, 0) << "seed " << seed;
    }
}

TEST(AntsProperty, ClonesAreCreatedAwayFromTheirParent) {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        replay::run_library(replay::generate(seed), [&](const Colony& c, const TimedAction& a) {
            if (const auto* cl = std::get_if<action::Clone>(&a.action)) {
                ASSERT_TRUE(c.vms.contains(cl->parent));
                EXPECT_NE(c.vm(cl->parent).host, cl->node);
                EXPECT_FALSE(c.vm(cl->parent).is_clone);
            }
        });
    }
}

TEST(AntsProperty, ConsolidatedNodeIsLeftEmpty) {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        replay::run_library(replay::generate(seed), [&](const Colony& c, const TimedAction& a) {
            if (const auto* con = std::get_if<action::Consolidate>(&a.action)) {
                EXPECT_TRUE(c.node(con->node).hosted_vms.empty());
            }
        });
    }
}

TEST(AntsProperty, QueueNeverLosesARequest) {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const auto s = replay::generate(seed);
        std::size_t arrivals = 0;
        for (const auto& e : s.events) arrivals += e.op == replay::Op::Arrive;
        std::size_t terminal = 0;
        std::size_t requeued = 0;
        for (const auto& line : replay::run_library(s)) {
            terminal += line.find(" deploy ") != std::string::npos || line.find(" reject ") != std::string::npos;
            requeued += line.find(" requeue ") != std::string::npos;
        }
        EXPECT_EQ(terminal, arrivals + requeued) << "seed " << seed;
    }
}

} // namespace
