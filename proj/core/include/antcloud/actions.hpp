#pragma once

// Typed, timestamped record of everything the agents decide. The canonical
// text form (to_string) is what replay tests compare line by line.
//
// A remediation is logged first, followed by the power-state changes it
// required (wake of its target, warm-pool top-up) in execution order.

#include <antcloud/domain.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace antcloud {

enum class AdminReason : std::uint8_t { ResourceScarcity, FewResources };

std::string_view to_string(AdminReason r);

namespace action {

struct Deploy {
    RequestId request;
    VmId vm;
    NodeId node;
};
struct Reject {
    RequestId request;
};
struct PointerMove {
    std::optional<NodeId> from;
    std::optional<NodeId> to;
};
struct StateChange {
    NodeId node;
    NodeState from;
    NodeState to;
};
struct Migrate {
    VmId vm;
    NodeId from;
    NodeId to;
};
struct Clone {
    VmId source; // the VM whose SLA triggered the clone
    VmId clone;
    VmId parent; // root VM of the application
    NodeId node;
    Resources entitlement;
};
struct Consolidate {
    NodeId node;
    std::size_t vms = 0;
};
struct NotifyAdmin {
    AdminReason reason;
};
struct NotifyUser {
    RequestId request;
    SimTime lease_expiry = 0.0;
};
struct RemoveClone {
    VmId clone;
    VmId parent;
    NodeId node;
};
struct RemoveVm {
    VmId vm;
    NodeId node;
};
struct MarkFailed {
    NodeId node;
};
struct Requeue {
    RequestId request;
};
struct Register {
    NodeId node;
    std::size_t index = 0;
    bool by_controller = false;
};
struct JoinRedirect {
    std::string key;
    NodeId from;
    NodeId to;
};

} // namespace action

using Action = std::variant<action::Deploy, action::Reject, action::PointerMove, action::StateChange,
                            action::Migrate, action::Clone, action::Consolidate, action::NotifyAdmin,
                            action::NotifyUser, action::RemoveClone, action::RemoveVm, action::MarkFailed,
                            action::Requeue, action::Register, action::JoinRedirect>;

struct TimedAction {
    SimTime time = 0.0;
    Action action;
};

std::string_view kind_name(const Action& a);
std::string to_string(const Action& a);
std::string to_string(const TimedAction& a);

/// Shortest decimal form that parses back to the same double.
std::string format_number(double v);

} // namespace antcloud
