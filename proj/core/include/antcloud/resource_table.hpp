#pragma once

#include <antcloud/domain.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace antcloud {

/// Processing power per watt: GHz of the node over CPU power at full load.
double compute_ppw(double cpu_capacity, double p_cpu_peak);

/// Memory per watt: GB of the node over memory power at full load.
double compute_mpw(double mem_capacity, double p_mem_peak);

struct SortWeights {
    double ppw = 0.5;
    double mpw = 0.5;

    friend bool operator==(const SortWeights&, const SortWeights&) = default;
};

/// The colony's shared memory: nodes ordered by admission-time efficiency,
/// plus the allocation pointer marking where the next request lands.
///
/// Order is fixed between registrations and removals. Dynamic columns
/// (power, utilization, remaining capacity, state) are refreshed in place.
class AvailableResourceTable {
public:
    struct Entry {
        NodeId node;
        double ppw = 0.0;
        double mpw = 0.0;
        double efficiency = 0.0; // weighted max-normalized key; recomputed on re-sort
        double current_power_w = 0.0;
        Resources remaining;
        Resources capacity;
        double cpu_util = 0.0;
        double mem_util = 0.0;
        NodeState state = NodeState::Off;
    };

    AvailableResourceTable() = default;
    explicit AvailableResourceTable(SortWeights weights) : weights_(weights) {}

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const SortWeights& weights() const { return weights_; }

    std::optional<std::size_t> allocation_ptr() const { return ptr_; }
    void set_allocation_ptr(std::optional<std::size_t> ptr);
    /// Node the pointer designates, if any.
    std::optional<NodeId> pointed_node() const;

    std::optional<std::size_t> index_of(NodeId id) const;
    bool contains(NodeId id) const { return index_of(id).has_value(); }
    /// Throws NotFoundError.
    Entry& entry(NodeId id);
    const Entry& entry(NodeId id) const;
    const Entry& at(std::size_t index) const { return entries_.at(index); }

    /// Adds a node at its sorted position and re-anchors the pointer on the
    /// node it designated before. Returns the new node's index, or nullopt
    /// when the node was already present (registration is idempotent).
    std::optional<std::size_t> insert(const NodeRecord& node);

    /// Result of removing the pointed node: the pointer slides to the entry
    /// that takes its place, which may need waking.
    struct RemovalResult {
        bool removed = false;
        std::optional<NodeId> wake;
    };
    RemovalResult remove(NodeId id);

    /// Pairwise scan: entries are sorted by descending efficiency, ties by id.
    bool is_sorted() const;

private:
    friend AvailableResourceTable sort_nodes(std::span<const NodeRecord>, SortWeights);
    void resort();

    SortWeights weights_;
    std::vector<Entry> entries_;
    std::optional<std::size_t> ptr_;
};

/// Builds a table ordered by descending w_ppw*PPW/max(PPW) + w_mpw*MPW/max(MPW),
/// ties broken by ascending node id. The pointer starts at index 0.
/// Throws InvalidProfileError on bad wattages, ValidationError on bad weights.
AvailableResourceTable sort_nodes(std::span<const NodeRecord> nodes, SortWeights weights);

/// Throws NotFoundError for an unknown node.
Resources remaining_capacity(const AvailableResourceTable& table, NodeId node);

struct PointerAdvance {
    std::optional<std::size_t> position;
    /// Set when the newly designated node is not Active and must be woken.
    std::optional<NodeId> wake;
};

/// Moves the allocation pointer one entry forward; past the end it becomes
/// invalid, and an invalid pointer stays invalid.
PointerAdvance advance_pointer(AvailableResourceTable& table);

} // namespace antcloud
