#pragma once

// Power-unaware reference policies. They keep every node Active, never
// migrate, clone or consolidate, and place one basic VM per request.

#include <antcloud/ants.hpp>
#include <antcloud/colony.hpp>

#include <cstddef>

namespace antcloud::baselines {

/// Cyclic scan in node-id order starting after the last node used.
class RoundRobin {
public:
    ants::AllocationResult allocate(Colony& colony, RequestId request);

private:
    std::optional<NodeId> last_;
};

/// Lowest-id node that fits a basic VM.
ants::AllocationResult first_fit_allocate(Colony& colony, RequestId request);

} // namespace antcloud::baselines
