#include <antcloud/ants.hpp>

#include <antcloud/errors.hpp>

#include <algorithm>
#include <array>
#include <limits>

namespace antcloud::ants {

namespace {

/// Log entries appended since `mark`.
std::vector<Action> since(const Colony& colony, std::size_t mark) {
    std::vector<Action> out;
    const auto& log = colony.log();
    for (std::size_t i = mark; i < log.size(); ++i) out.push_back(log[i].action);
    return out;
}

bool fits(const Colony& colony, NodeId node, Resources need) { return colony.free_capacity(node).covers(need); }

Resources max_of(Resources a, Resources b) { return {std::max(a.cpu, b.cpu), std::max(a.mem, b.mem)}; }

bool measurable(Resources usage) { return usage.cpu > 0.0 || usage.mem > 0.0; }

/// Moves the allocation pointer, wakes the new node and tops up the pool.
void move_pointer(Colony& colony) {
    const auto from = colony.table.pointed_node();
    const auto adv = advance_pointer(colony.table);
    colony.record(action::PointerMove{from, colony.table.pointed_node()});
    if (adv.wake) {
        if (auto change = colony.wake_node(*adv.wake)) colony.record(*change);
    }
    maintain_warm_pool(colony);
}

/// Hosts a VM of `vm`'s application must avoid: its own and its root's.
std::pair<NodeId, NodeId> excluded_hosts(const Colony& colony, const VmInstance& vm) {
    return {vm.host, colony.vm(colony.root_of(vm)).host};
}

/// First entry in table order satisfying the filters.
std::optional<NodeId> first_candidate(const Colony& colony, std::size_t end, std::pair<NodeId, NodeId> excluded,
                                      bool allow_standby, Resources need) {
    const auto& entries = colony.table.entries();
    end = std::min(end, entries.size());
    for (std::size_t i = 0; i < end; ++i) {
        const NodeId id = entries[i].node;
        if (id == excluded.first || id == excluded.second) continue;
        const NodeState s = colony.node(id).state;
        const bool eligible = s == NodeState::Active || (allow_standby && s == NodeState::Standby);
        if (!eligible) continue;
        if (fits(colony, id, need)) return id;
    }
    return std::nullopt;
}

/// Wakes `target` if needed, then puts the entry after it in Standby.
/// Returns the power actions to log after the remediation itself.
std::vector<Action> prepare_target(Colony& colony, NodeId target, bool& woke) {
    std::vector<Action> side;
    woke = false;
    if (colony.node(target).state == NodeState::Active) return side;
    if (auto change = colony.wake_node(target)) side.emplace_back(*change);
    woke = true;
    const auto idx = colony.table.index_of(target);
    if (idx && *idx + 1 < colony.table.size()) {
        const NodeId next = colony.table.at(*idx + 1).node;
        if (colony.node(next).state == NodeState::Off) {
            if (auto change = colony.change_power_state(next, NodeState::Standby)) side.emplace_back(*change);
        }
    } else {
        side.emplace_back(action::NotifyAdmin{AdminReason::FewResources});
    }
    return side;
}

void split_traffic_evenly(Colony& colony, RequestId request) {
    const auto ids = colony.app_vms(request);
    for (VmId id : ids) colony.vm(id).traffic_share = 1.0 / static_cast<double>(ids.size());
}

/// Creates a clone of `source` on `target` sized `size`, shares traffic
/// evenly across the application and logs Clone followed by `side`.
void place_clone(Colony& colony, VmId source, NodeId target, Resources size, const std::vector<Action>& side) {
    const auto& src = colony.vm(source);
    const VmId root = colony.root_of(src);
    const RequestId request = src.request;
    const VmId clone = colony.create_vm(request, target, size, root, 0.0);
    split_traffic_evenly(colony, request);
    colony.record(action::Clone{source, clone, root, target, size});
    for (const auto& a : side) colony.record(a);
}

void migrate(Colony& colony, VmId vm, NodeId target, const std::vector<Action>& side) {
    const NodeId from = colony.vm(vm).host;
    colony.move_vm(vm, target);
    colony.record(action::Migrate{vm, from, target});
    for (const auto& a : side) colony.record(a);
}

/// Removes a clone and hands its traffic back to the root VM.
void reclaim_clone(Colony& colony, VmId clone) {
    const auto& c = colony.vm(clone);
    const VmId root = *c.parent;
    const double share = c.traffic_share;
    colony.erase_vm(clone);
    if (auto it = colony.vms.find(root); it != colony.vms.end()) it->second.traffic_share += share;
}

/// VMs of a node ordered by descending measured CPU usage, then id.
std::vector<std::pair<VmId, Resources>> by_usage(const Colony& colony, NodeId node, const Telemetry& telemetry) {
    std::vector<std::pair<VmId, Resources>> out;
    for (VmId id : colony.node(node).hosted_vms) out.emplace_back(id, telemetry.vm_usage(colony, colony.vm(id)));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second.cpu != b.second.cpu) return a.second.cpu > b.second.cpu;
        return a.first < b.first;
    });
    return out;
}

} // namespace

std::size_t pick_index(Rng& rng, std::size_t n) {
    if (n == 0) throw DomainError("cannot pick from an empty set");
    const std::uint64_t range = n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return static_cast<std::size_t>(x % range);
}

std::string_view to_string(AntKind k) {
    switch (k) {
    case AntKind::Worker: return "worker";
    case AntKind::Tester: return "tester";
    case AntKind::Scout: return "scout";
    case AntKind::Cleaner: return "cleaner";
    }
    return "?";
}

NodeId next_hop(AntAgent& ant, const Colony& colony, Rng& rng) {
    if (!ant.current) throw DomainError("ant has no current node");
    const NodeId here = *ant.current;
    std::vector<NodeId> fleet;
    for (const auto& e : colony.table.entries()) fleet.push_back(e.node);
    std::sort(fleet.begin(), fleet.end());
    if (fleet.size() <= 1) return here;

    auto eligible = [&](NodeId n) {
        return n != here && std::binary_search(fleet.begin(), fleet.end(), n) && !ant.visited.contains(n);
    };
    auto choose = [&]() -> std::optional<NodeId> {
        std::vector<NodeId> cands;
        if (colony.has_node(here)) {
            for (NodeId n : colony.node(here).neighbor_ids) {
                if (eligible(n)) cands.push_back(n);
            }
        }
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        if (cands.empty()) {
            for (NodeId n : fleet) {
                if (eligible(n)) cands.push_back(n);
            }
        }
        if (cands.empty()) return std::nullopt;
        return cands[pick_index(rng, cands.size())];
    };

    auto next = choose();
    if (!next) {
        ant.visited.clear();
        next = choose();
    }
    return next.value_or(here);
}

void arrive(AntAgent& ant, NodeId node) {
    ant.current = node;
    ant.visited.insert(node);
}

AllocationResult worker_allocate(Colony& colony, RequestId request) {
    auto& table = colony.table;
    const auto pointed = table.pointed_node();
    if (!pointed) {
        colony.record(action::Reject{request});
        return {AllocationOutcome::Rejected, std::nullopt};
    }
    const Resources basic = colony.tunables.basic_vm;
    if (fits(colony, *pointed, basic)) {
        const VmId vm = colony.create_vm(request, *pointed, basic, std::nullopt, 1.0);
        colony.record(action::Deploy{request, vm, *pointed});
        if (!fits(colony, *pointed, basic)) {
            move_pointer(colony);
            if (!table.allocation_ptr()) colony.record(action::NotifyAdmin{AdminReason::ResourceScarcity});
        }
        return {AllocationOutcome::Deployed, vm};
    }
    move_pointer(colony);
    if (const auto next = table.pointed_node(); next && fits(colony, *next, basic)) {
        return worker_allocate(colony, request);
    }
    colony.record(action::Reject{request});
    return {AllocationOutcome::Rejected, std::nullopt};
}

std::vector<AllocationResult> drain_queue(Colony& colony) {
    std::vector<AllocationResult> out;
    auto& q = colony.controller.request_queue;
    while (!q.empty()) {
        const RequestId r = q.front();
        q.pop_front();
        out.push_back(worker_allocate(colony, r));
    }
    return out;
}

void maintain_warm_pool(Colony& colony) {
    const auto ptr = colony.table.allocation_ptr();
    if (!ptr) return;
    const std::size_t want = colony.tunables.warm_pool_size;
    std::size_t filled = 0;
    for (std::size_t i = *ptr + 1; i < colony.table.size(); ++i) {
        const NodeId id = colony.table.at(i).node;
        const NodeState s = colony.node(id).state;
        if (s == NodeState::Active) continue;
        if (filled < want) {
            if (s == NodeState::Off) colony.set_power_state(id, NodeState::Standby);
            ++filled;
        } else if (s == NodeState::Standby) {
            colony.set_power_state(id, NodeState::Off);
        }
    }
    if (filled < want) colony.record(action::NotifyAdmin{AdminReason::FewResources});
}

std::vector<Action> handle_critical(Colony& colony, VmId vm_id, SlamCode code, const Telemetry& telemetry) {
    const std::size_t mark = colony.log().size();
    if (!is_critical(code)) return {};
    const auto& vm = colony.vm(vm_id);
    const Resources usage = telemetry.vm_usage(colony, vm);
    if (!measurable(usage)) return {};

    const auto excluded = excluded_hosts(colony, vm);
    const Resources clone_size = usage * colony.tunables.clone_fraction;
    const std::size_t all = colony.table.size();

    std::optional<NodeId> migrate_to;
    if (code == SlamCode::CritMigrate) {
        const Resources need = max_of(vm.entitlement, usage * colony.tunables.migrate_headroom);
        migrate_to = first_candidate(colony, all, excluded, true, need);
    }
    const auto clone_to = migrate_to ? std::nullopt : first_candidate(colony, all, excluded, true, clone_size);

    if (!migrate_to && !clone_to) {
        colony.record(action::NotifyAdmin{AdminReason::ResourceScarcity});
        return since(colony, mark);
    }
    const NodeId target = migrate_to ? *migrate_to : *clone_to;
    bool woke = false;
    const auto side = prepare_target(colony, target, woke);
    if (migrate_to) {
        migrate(colony, vm_id, target, side);
    } else {
        place_clone(colony, vm_id, target, clone_size, side);
    }
    if (woke) maintain_warm_pool(colony);
    return since(colony, mark);
}

std::vector<Action> handle_recommended(Colony& colony, VmId vm_id, SlamCode code, const Telemetry& telemetry) {
    const std::size_t mark = colony.log().size();
    if (!is_recommended(code)) return {};
    const auto& vm = colony.vm(vm_id);
    const auto host_idx = colony.table.index_of(vm.host);
    if (!host_idx) return {};
    const Resources usage = telemetry.vm_usage(colony, vm);
    if (!measurable(usage)) return {};
    const auto excluded = excluded_hosts(colony, vm);

    if (code == SlamCode::RecMigrate) {
        const Resources need = max_of(vm.entitlement, usage * colony.tunables.migrate_headroom);
        if (auto to = first_candidate(colony, *host_idx, excluded, false, need)) migrate(colony, vm_id, *to, {});
    } else {
        const Resources size = usage * colony.tunables.clone_fraction;
        if (auto to = first_candidate(colony, *host_idx, excluded, false, size)) place_clone(colony, vm_id, *to, size, {});
    }
    return since(colony, mark);
}

bool try_consolidate(Colony& colony, NodeId node_id, const Telemetry& telemetry) {
    const auto idx = colony.table.index_of(node_id);
    if (!idx) return false;
    if (colony.table.pointed_node() == node_id) return false;

    struct Target {
        NodeId id;
        std::size_t order;
        Resources free;
        Resources load;
        Resources capacity;
    };
    std::vector<Target> targets;
    for (std::size_t i = 0; i < *idx; ++i) {
        const NodeId id = colony.table.at(i).node;
        const auto& n = colony.node(id);
        if (n.state != NodeState::Active) continue;
        targets.push_back({id, i, colony.free_capacity(id), colony.node_usage(id, telemetry), n.capacity()});
    }
    std::sort(targets.begin(), targets.end(), [](const Target& a, const Target& b) {
        if (a.free.cpu != b.free.cpu) return a.free.cpu > b.free.cpu;
        if (a.free.mem != b.free.mem) return a.free.mem > b.free.mem;
        return a.order < b.order;
    });

    const double ceiling = colony.tunables.desirable_util;
    std::vector<std::pair<VmId, NodeId>> plan;
    for (const auto& [vm_id, usage] : by_usage(colony, node_id, telemetry)) {
        const Resources ent = colony.vm(vm_id).entitlement;
        auto it = std::find_if(targets.begin(), targets.end(), [&](const Target& t) {
            const Resources load = t.load + usage;
            return t.free.covers(ent) && load.cpu <= ceiling * t.capacity.cpu && load.mem <= ceiling * t.capacity.mem;
        });
        if (it == targets.end()) return false;
        it->free = it->free - ent;
        it->load = it->load + usage;
        plan.emplace_back(vm_id, it->id);
    }

    for (const auto& [vm_id, to] : plan) migrate(colony, vm_id, to, {});
    colony.record(action::Consolidate{node_id, plan.size()});
    colony.set_power_state(node_id, NodeState::Standby);
    for (std::size_t i = colony.table.size(); i-- > 0;) {
        const NodeId id = colony.table.at(i).node;
        if (colony.node(id).state == NodeState::Standby) {
            colony.set_power_state(id, NodeState::Off);
            break;
        }
    }
    return true;
}

std::vector<Action> tester_visit(Colony& colony, NodeId node_id, const Telemetry& telemetry) {
    const std::size_t mark = colony.log().size();
    const auto& node = colony.node(node_id);
    if (!node.responsive()) return {};
    colony.refresh_entry(node_id, telemetry);
    if (node.state != NodeState::Active || !node.ready(colony.now)) return {};

    std::vector<std::pair<VmId, SlamCode>> snapshot;
    for (VmId id : node.hosted_vms) {
        auto& vm = colony.vm(id);
        const auto& req = colony.request(vm.request);
        vm.slam = sla::compute_slam({req.rtime_target, req.thput_target}, telemetry.observe(colony, vm),
                                    colony.tunables.sla);
        colony.count_observation(vm.slam);
        snapshot.emplace_back(id, vm.slam);
    }
    auto code_of = [&](VmId id) {
        return std::find_if(snapshot.begin(), snapshot.end(), [&](const auto& p) { return p.first == id; })->second;
    };

    const Resources util = colony.node_utilization(node_id, telemetry);
    const auto& t = colony.tunables;
    if (util.cpu > t.peak_util || util.mem > t.peak_util) {
        // Highest-usage VM of each code, handled 22, 21, 11, 12.
        const auto order = by_usage(colony, node_id, telemetry);
        auto first_with = [&](SlamCode code) -> std::optional<VmId> {
            for (const auto& [id, usage] : order) {
                if (code_of(id) == code) return id;
            }
            return std::nullopt;
        };
        const std::array picks{first_with(SlamCode::CritClone), first_with(SlamCode::CritMigrate),
                               first_with(SlamCode::RecMigrate), first_with(SlamCode::RecClone)};
        const std::array codes{SlamCode::CritClone, SlamCode::CritMigrate, SlamCode::RecMigrate, SlamCode::RecClone};
        for (std::size_t i = 0; i < picks.size(); ++i) {
            const auto vm = picks[i];
            if (!vm || !colony.vms.contains(*vm) || colony.vm(*vm).host != node_id) continue;
            if (is_critical(codes[i])) {
                handle_critical(colony, *vm, codes[i], telemetry);
            } else {
                handle_recommended(colony, *vm, codes[i], telemetry);
            }
        }
    }
    if (util.cpu < t.low_util && util.mem < t.low_util) try_consolidate(colony, node_id, telemetry);
    return since(colony, mark);
}

std::optional<NodeId> register_node(Colony& colony, const JoinRequest& join, std::optional<NodeId> contact) {
    if (colony.registered_keys.contains(join.key)) return std::nullopt;
    validate(join.spec.power);

    NodeRecord rec = join.spec;
    rec.state = NodeState::Standby;
    rec.hosted_vms.clear();
    rec.neighbor_ids.clear();
    rec.transition.reset();
    rec.crashed = false;
    rec.last_seen = colony.now;
    const NodeId id = colony.add_node(std::move(rec));
    if (contact) {
        colony.node(id).neighbor_ids.push_back(*contact);
        colony.node(*contact).neighbor_ids.push_back(id);
    }
    colony.registered_keys.insert(join.key);
    const auto index = colony.table.insert(colony.node(id));
    colony.record(action::Register{id, index.value_or(0), !contact.has_value()});
    return id;
}

std::vector<Action> scout_visit(Colony& colony, NodeId node_id) {
    const std::size_t mark = colony.log().size();
    if (!colony.node(node_id).responsive()) return {};
    auto it = colony.pending_joins.find(node_id);
    if (it == colony.pending_joins.end()) return {};
    auto joins = std::move(it->second);
    colony.pending_joins.erase(it);
    for (const auto& j : joins) register_node(colony, j, node_id);
    return since(colony, mark);
}

void redirect_joins(Colony& colony, NodeId dead) {
    auto it = colony.pending_joins.find(dead);
    if (it == colony.pending_joins.end()) return;
    std::optional<NodeId> to;
    auto alive = [&](NodeId n) { return colony.table.contains(n) && colony.node(n).responsive(); };
    std::vector<NodeId> neigh = colony.node(dead).neighbor_ids;
    std::sort(neigh.begin(), neigh.end());
    for (NodeId n : neigh) {
        if (alive(n)) {
            to = n;
            break;
        }
    }
    if (!to) {
        for (const auto& n : colony.nodes) {
            if (n.id != dead && alive(n.id)) {
                to = n.id;
                break;
            }
        }
    }
    if (!to) return;
    auto joins = std::move(it->second);
    colony.pending_joins.erase(it);
    for (auto& j : joins) {
        colony.record(action::JoinRedirect{j.key, dead, *to});
        colony.pending_joins[*to].push_back(std::move(j));
    }
}

void mark_failed(Colony& colony, NodeId node_id) {
    auto& node = colony.node(node_id);
    node.state = NodeState::Failed;
    node.transition.reset();
    const auto removal = colony.table.remove(node_id);

    std::vector<RequestId> requeue;
    // Orphaned clones go with their root so shares never sum below one.
    std::vector<std::pair<VmId, NodeId>> orphans;
    const std::vector<VmId> hosted = node.hosted_vms;
    for (VmId id : hosted) {
        if (!colony.vms.contains(id)) continue;
        const auto& vm = colony.vm(id);
        if (vm.is_clone) {
            if (colony.vms.contains(*vm.parent) && colony.vm(*vm.parent).host != node_id) {
                reclaim_clone(colony, id);
            } else {
                colony.erase_vm(id);
            }
            continue;
        }
        const RequestId request = vm.request;
        if (colony.now < vm.lease_expiry) requeue.push_back(request);
        colony.erase_vm(id);
        for (VmId other : colony.app_vms(request)) {
            const NodeId host = colony.vm(other).host;
            if (host != node_id) orphans.emplace_back(other, host);
            colony.erase_vm(other);
        }
    }
    colony.record(action::MarkFailed{node_id});
    for (const auto& [id, host] : orphans) colony.record(action::RemoveVm{id, host});
    std::sort(requeue.begin(), requeue.end());
    for (auto it = requeue.rbegin(); it != requeue.rend(); ++it) colony.controller.request_queue.push_front(*it);
    for (RequestId r : requeue) colony.record(action::Requeue{r});
    if (removal.wake) {
        if (auto change = colony.wake_node(*removal.wake)) colony.record(*change);
        maintain_warm_pool(colony);
    }
}

std::vector<Action> cleaner_visit(Colony& colony, NodeId node_id, const Telemetry& telemetry) {
    const std::size_t mark = colony.log().size();
    auto& node = colony.node(node_id);
    if (node.state == NodeState::Failed) return {};
    if (node.crashed) {
        if (colony.now - node.last_seen > colony.tunables.failure_timeout) mark_failed(colony, node_id);
        return since(colony, mark);
    }
    colony.refresh_entry(node_id, telemetry);
    const auto& t = colony.tunables;
    const SimTime now = colony.now;

    if (node.state == NodeState::Active && node.ready(now)) {
        std::vector<VmId> clones;
        for (VmId id : node.hosted_vms) {
            if (colony.vm(id).is_clone) clones.push_back(id);
        }
        std::sort(clones.begin(), clones.end());
        for (VmId id : clones) {
            const auto& clone = colony.vm(id);
            const VmId root_id = *clone.parent;
            if (!colony.vms.contains(root_id)) continue;
            const auto& root = colony.vm(root_id);
            const Resources usage = telemetry.vm_usage(colony, clone);
            const Resources root_usage = telemetry.vm_usage(colony, root);
            // Utilization the parent would reach after absorbing the clone's load.
            const double parent_util =
                root.entitlement.cpu > 0.0 ? (root_usage.cpu + usage.cpu) / root.entitlement.cpu : 0.0;
            if (!(parent_util < t.peak_util)) continue;

            const auto& req = colony.request(clone.request);
            const auto obs = telemetry.observe(colony, clone);
            const bool idle = !measurable(usage);
            const bool comfortable = obs.observed_rtime <= (1.0 - t.reclaim_margin) * req.rtime_target &&
                                     obs.observed_thput >= (1.0 + t.reclaim_margin) * req.thput_target;
            if (idle || comfortable) {
                reclaim_clone(colony, id);
                colony.record(action::RemoveClone{id, root_id, node_id});
            }
        }
    }

    std::vector<VmId> hosted = node.hosted_vms;
    std::sort(hosted.begin(), hosted.end());
    for (VmId id : hosted) {
        const auto& vm = colony.vm(id);
        const SimTime left = vm.lease_expiry - now;
        if (left > 0.0 && left < t.lease_warning && !colony.controller.lease_warned.contains(vm.request)) {
            colony.controller.lease_warned.insert(vm.request);
            colony.record(action::NotifyUser{vm.request, vm.lease_expiry});
        }
    }
    for (VmId id : hosted) {
        if (!colony.vms.contains(id)) continue;
        const auto& vm = colony.vm(id);
        if (now < vm.lease_expiry) continue;
        if (vm.is_clone) {
            reclaim_clone(colony, id);
            colony.record(action::RemoveVm{id, node_id});
            continue;
        }
        const RequestId request = vm.request;
        std::vector<std::pair<VmId, NodeId>> gone{{id, node_id}};
        colony.erase_vm(id);
        for (VmId other : colony.app_vms(request)) {
            gone.emplace_back(other, colony.vm(other).host);
            colony.erase_vm(other);
        }
        for (const auto& [vid, host] : gone) colony.record(action::RemoveVm{vid, host});
    }
    return since(colony, mark);
}

} // namespace antcloud::ants
