#include <antcloud/baselines.hpp>

#include <algorithm>

namespace antcloud::baselines {

namespace {

/// Live table nodes in ascending id order.
std::vector<NodeId> candidates(const Colony& colony) {
    std::vector<NodeId> out;
    for (const auto& e : colony.table.entries()) {
        if (colony.node(e.node).responsive()) out.push_back(e.node);
    }
    std::sort(out.begin(), out.end());
    return out;
}

ants::AllocationResult place(Colony& colony, RequestId request, NodeId node) {
    const VmId vm = colony.create_vm(request, node, colony.tunables.basic_vm, std::nullopt, 1.0);
    colony.record(action::Deploy{request, vm, node});
    return {ants::AllocationOutcome::Deployed, vm};
}

ants::AllocationResult reject(Colony& colony, RequestId request) {
    colony.record(action::Reject{request});
    return {ants::AllocationOutcome::Rejected, std::nullopt};
}

} // namespace

ants::AllocationResult RoundRobin::allocate(Colony& colony, RequestId request) {
    const auto nodes = candidates(colony);
    if (nodes.empty()) return reject(colony, request);
    std::size_t start = 0;
    if (last_) start = static_cast<std::size_t>(std::upper_bound(nodes.begin(), nodes.end(), *last_) - nodes.begin());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const NodeId n = nodes[(start + k) % nodes.size()];
        if (colony.free_capacity(n).covers(colony.tunables.basic_vm)) {
            last_ = n;
            return place(colony, request, n);
        }
    }
    return reject(colony, request);
}

ants::AllocationResult first_fit_allocate(Colony& colony, RequestId request) {
    for (NodeId n : candidates(colony)) {
        if (colony.free_capacity(n).covers(colony.tunables.basic_vm)) return place(colony, request, n);
    }
    return reject(colony, request);
}

} // namespace antcloud::baselines
