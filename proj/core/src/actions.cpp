#include <antcloud/actions.hpp>

#include <array>
#include <charconv>
#include <sstream>

namespace antcloud {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string opt_node(const std::optional<NodeId>& n) { return n ? std::to_string(n->value) : "none"; }

} // namespace

std::string_view to_string(AdminReason r) {
    return r == AdminReason::ResourceScarcity ? "resource_scarcity" : "few_resources";
}

std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), end);
}

std::string_view kind_name(const Action& a) {
    return std::visit(overloaded{
                          [](const action::Deploy&) { return "deploy"; },
                          [](const action::Reject&) { return "reject"; },
                          [](const action::PointerMove&) { return "pointer"; },
                          [](const action::StateChange&) { return "state"; },
                          [](const action::Migrate&) { return "migrate"; },
                          [](const action::Clone&) { return "clone"; },
                          [](const action::Consolidate&) { return "consolidate"; },
                          [](const action::NotifyAdmin&) { return "notify_admin"; },
                          [](const action::NotifyUser&) { return "notify_user"; },
                          [](const action::RemoveClone&) { return "remove_clone"; },
                          [](const action::RemoveVm&) { return "remove_vm"; },
                          [](const action::MarkFailed&) { return "mark_failed"; },
                          [](const action::Requeue&) { return "requeue"; },
                          [](const action::Register&) { return "register"; },
                          [](const action::JoinRedirect&) { return "join_redirect"; },
                      },
                      a);
}

std::string to_string(const Action& a) {
    std::ostringstream os;
    os << kind_name(a);
    std::visit(overloaded{
                   [&](const action::Deploy& x) { os << " request=" << x.request << " vm=" << x.vm << " node=" << x.node; },
                   [&](const action::Reject& x) { os << " request=" << x.request; },
                   [&](const action::PointerMove& x) { os << " from=" << opt_node(x.from) << " to=" << opt_node(x.to); },
                   [&](const action::StateChange& x) {
                       os << " node=" << x.node << " from=" << to_string(x.from) << " to=" << to_string(x.to);
                   },
                   [&](const action::Migrate& x) { os << " vm=" << x.vm << " from=" << x.from << " to=" << x.to; },
                   [&](const action::Clone& x) {
                       os << " source=" << x.source << " clone=" << x.clone << " parent=" << x.parent << " node=" << x.node
                          << " cpu=" << format_number(x.entitlement.cpu) << " mem=" << format_number(x.entitlement.mem);
                   },
                   [&](const action::Consolidate& x) { os << " node=" << x.node << " vms=" << x.vms; },
                   [&](const action::NotifyAdmin& x) { os << " reason=" << to_string(x.reason); },
                   [&](const action::NotifyUser& x) {
                       os << " request=" << x.request << " lease_expiry=" << format_number(x.lease_expiry);
                   },
                   [&](const action::RemoveClone& x) {
                       os << " clone=" << x.clone << " parent=" << x.parent << " node=" << x.node;
                   },
                   [&](const action::RemoveVm& x) { os << " vm=" << x.vm << " node=" << x.node; },
                   [&](const action::MarkFailed& x) { os << " node=" << x.node; },
                   [&](const action::Requeue& x) { os << " request=" << x.request; },
                   [&](const action::Register& x) {
                       os << " node=" << x.node << " index=" << x.index << " by=" << (x.by_controller ? "controller" : "scout");
                   },
                   [&](const action::JoinRedirect& x) { os << " key=" << x.key << " from=" << x.from << " to=" << x.to; },
               },
               a);
    return os.str();
}

std::string to_string(const TimedAction& a) { return "t=" + format_number(a.time) + " " + to_string(a.action); }

} // namespace antcloud
