#pragma once

// Performance model behind the SLA monitor: one M/M/1 queue per VM whose
// service rate follows its effective CPU share of the host.

#include <antcloud/colony.hpp>
#include <antcloud/workload.hpp>

#include <map>
#include <set>

namespace antcloud {

class PerformanceTelemetry final : public Telemetry {
public:
    explicit PerformanceTelemetry(double saturation_rtime = 10.0) : saturation_rtime_(saturation_rtime) {}

    void set_profile(RequestId request, LoadProfile profile) { profiles_[request] = std::move(profile); }
    /// Traffic of the application ends (lease expired).
    void stop(RequestId request) { stopped_.insert(request); }
    bool stopped(RequestId request) const { return stopped_.contains(request); }

    /// Application-wide offered load at `t`; zero once stopped.
    LoadPoint offered(RequestId request, SimTime t) const;

    /// CPU the VM can draw: its weighted max-min share of the host, with
    /// entitlements as weights and the other VMs capped at their demand
    /// (work-conserving hypervisor). Zero while the host is crashed, not yet
    /// ready, or the VM is in flight.
    double effective_cpu(const Colony& colony, const VmInstance& vm) const;

    Resources vm_usage(const Colony& colony, const VmInstance& vm) const override;
    SlaObservation observe(const Colony& colony, const VmInstance& vm) const override;

private:
    double saturation_rtime_;
    std::map<RequestId, LoadProfile> profiles_;
    std::set<RequestId> stopped_;
};

} // namespace antcloud
