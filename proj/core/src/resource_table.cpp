#include <antcloud/resource_table.hpp>

#include <antcloud/errors.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace antcloud {

namespace {

void check_weights(const SortWeights& w) {
    if (!(w.ppw >= 0.0) || !(w.mpw >= 0.0) || std::abs(w.ppw + w.mpw - 1.0) > 1e-9) {
        throw ValidationError("sort weights must be non-negative and sum to 1");
    }
}

AvailableResourceTable::Entry make_entry(const NodeRecord& n) {
    AvailableResourceTable::Entry e;
    e.node = n.id;
    e.ppw = compute_ppw(n.cpu_capacity, n.power.p_cpu_peak);
    e.mpw = compute_mpw(n.mem_capacity, n.power.p_mem_peak);
    e.capacity = n.capacity();
    e.remaining = n.capacity();
    e.state = n.state;
    return e;
}

bool ranks_before(const AvailableResourceTable::Entry& a, const AvailableResourceTable::Entry& b) {
    if (a.efficiency != b.efficiency) return a.efficiency > b.efficiency;
    return a.node < b.node;
}

} // namespace

double compute_ppw(double cpu_capacity, double p_cpu_peak) {
    if (!(p_cpu_peak > 0.0)) throw InvalidProfileError("CPU peak power must be positive");
    return cpu_capacity / p_cpu_peak;
}

double compute_mpw(double mem_capacity, double p_mem_peak) {
    if (!(p_mem_peak > 0.0)) throw InvalidProfileError("memory peak power must be positive");
    return mem_capacity / p_mem_peak;
}

void AvailableResourceTable::set_allocation_ptr(std::optional<std::size_t> ptr) {
    if (ptr && *ptr >= entries_.size()) ptr.reset();
    ptr_ = ptr;
}

std::optional<NodeId> AvailableResourceTable::pointed_node() const {
    if (!ptr_) return std::nullopt;
    return entries_[*ptr_].node;
}

std::optional<std::size_t> AvailableResourceTable::index_of(NodeId id) const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].node == id) return i;
    }
    return std::nullopt;
}

AvailableResourceTable::Entry& AvailableResourceTable::entry(NodeId id) {
    auto idx = index_of(id);
    if (!idx) throw NotFoundError("node " + std::to_string(id.value) + " is not in the resource table");
    return entries_[*idx];
}

const AvailableResourceTable::Entry& AvailableResourceTable::entry(NodeId id) const {
    return const_cast<AvailableResourceTable*>(this)->entry(id);
}

void AvailableResourceTable::resort() {
    double max_ppw = 0.0;
    double max_mpw = 0.0;
    for (const auto& e : entries_) {
        max_ppw = std::max(max_ppw, e.ppw);
        max_mpw = std::max(max_mpw, e.mpw);
    }
    for (auto& e : entries_) {
        const double np = max_ppw > 0.0 ? e.ppw / max_ppw : 0.0;
        const double nm = max_mpw > 0.0 ? e.mpw / max_mpw : 0.0;
        e.efficiency = weights_.ppw * np + weights_.mpw * nm;
    }
    std::stable_sort(entries_.begin(), entries_.end(), ranks_before);
}

std::optional<std::size_t> AvailableResourceTable::insert(const NodeRecord& node) {
    if (contains(node.id)) return std::nullopt;
    const auto anchor = pointed_node();
    entries_.push_back(make_entry(node));
    resort();
    if (anchor) ptr_ = index_of(*anchor);
    return index_of(node.id);
}

AvailableResourceTable::RemovalResult AvailableResourceTable::remove(NodeId id) {
    RemovalResult result;
    const auto idx = index_of(id);
    if (!idx) return result;
    result.removed = true;

    const auto anchor = pointed_node();
    const bool removing_pointed = anchor && *anchor == id;
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(*idx));
    // Removal leaves the relative order of survivors intact under the old key,
    // but the normalization maxima may have changed.
    std::optional<NodeId> successor;
    if (removing_pointed && *idx < entries_.size()) successor = entries_[*idx].node;
    resort();

    if (!anchor) {
        ptr_.reset();
    } else if (!removing_pointed) {
        ptr_ = index_of(*anchor);
    } else if (successor) {
        ptr_ = index_of(*successor);
        if (entries_[*ptr_].state != NodeState::Active) result.wake = *successor;
    } else {
        ptr_.reset();
    }
    return result;
}

bool AvailableResourceTable::is_sorted() const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        for (std::size_t j = i + 1; j < entries_.size(); ++j) {
            if (ranks_before(entries_[j], entries_[i])) return false;
        }
    }
    return true;
}

AvailableResourceTable sort_nodes(std::span<const NodeRecord> nodes, SortWeights weights) {
    check_weights(weights);
    AvailableResourceTable table(weights);
    table.entries_.reserve(nodes.size());
    std::set<NodeId> seen;
    for (const auto& n : nodes) {
        if (!seen.insert(n.id).second) throw ValidationError("duplicate node id " + std::to_string(n.id.value));
        table.entries_.push_back(make_entry(n));
    }
    table.resort();
    if (!table.entries_.empty()) table.ptr_ = 0;
    return table;
}

Resources remaining_capacity(const AvailableResourceTable& table, NodeId node) {
    return table.entry(node).remaining;
}

PointerAdvance advance_pointer(AvailableResourceTable& table) {
    PointerAdvance out;
    const auto ptr = table.allocation_ptr();
    if (!ptr) return out;
    const std::size_t next = *ptr + 1;
    if (next >= table.size()) {
        table.set_allocation_ptr(std::nullopt);
        return out;
    }
    table.set_allocation_ptr(next);
    out.position = next;
    if (table.at(next).state != NodeState::Active) out.wake = table.at(next).node;
    return out;
}

} // namespace antcloud
