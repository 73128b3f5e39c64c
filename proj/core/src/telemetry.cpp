#include <antcloud/telemetry.hpp>

#include <algorithm>
#include <limits>
#include <utility>
#include <vector>

namespace antcloud {

LoadPoint PerformanceTelemetry::offered(RequestId request, SimTime t) const {
    auto it = profiles_.find(request);
    if (it == profiles_.end()) return {t, 0.0, 1.0};
    LoadPoint p = it->second.at(t);
    if (stopped_.contains(request)) p.rate = 0.0;
    return p;
}

namespace {

/// Weighted max-min share of `capacity` for `greedy`, the other VMs asking
/// for no more than their demand.
double water_fill(double capacity, std::size_t greedy, std::vector<std::pair<double, double>> claims) {
    claims[greedy].second = std::numeric_limits<double>::infinity();
    std::vector<bool> settled(claims.size(), false);
    double left = capacity;
    for (;;) {
        double weight = 0.0;
        for (std::size_t i = 0; i < claims.size(); ++i) {
            if (!settled[i]) weight += claims[i].first;
        }
        if (weight <= 0.0) return 0.0;
        bool moved = false;
        for (std::size_t i = 0; i < claims.size(); ++i) {
            if (settled[i] || claims[i].second > left * claims[i].first / weight) continue;
            settled[i] = true;
            left -= claims[i].second;
            moved = true;
        }
        if (!moved) return left * claims[greedy].first / weight;
    }
}

} // namespace

double PerformanceTelemetry::effective_cpu(const Colony& colony, const VmInstance& vm) const {
    const auto& host = colony.node(vm.host);
    if (host.crashed || host.state != NodeState::Active || !host.ready(colony.now)) return 0.0;
    if (colony.now < vm.serving_from) return 0.0;
    // (weight, demand) per serving VM; VMs in flight neither claim nor weigh.
    std::vector<std::pair<double, double>> claims;
    std::size_t self = 0;
    for (VmId id : host.hosted_vms) {
        const auto& other = colony.vm(id);
        if (colony.now < other.serving_from) continue;
        if (id == vm.id) self = claims.size();
        const LoadPoint load = offered(other.request, colony.now);
        claims.emplace_back(other.entitlement.cpu, other.traffic_share * load.rate * load.demand);
    }
    if (vm.entitlement.cpu <= 0.0) return 0.0;
    return water_fill(host.cpu_capacity, self, std::move(claims));
}

Resources PerformanceTelemetry::vm_usage(const Colony& colony, const VmInstance& vm) const {
    const double cpu = effective_cpu(colony, vm);
    if (cpu <= 0.0) return {};
    const LoadPoint load = offered(vm.request, colony.now);
    const double wanted = vm.traffic_share * load.rate * load.demand;
    const double mem_fraction = vm.entitlement.cpu > 0.0 ? std::min(1.0, wanted / vm.entitlement.cpu) : 0.0;
    return {std::min(wanted, cpu), vm.entitlement.mem * mem_fraction};
}

SlaObservation PerformanceTelemetry::observe(const Colony& colony, const VmInstance& vm) const {
    const LoadPoint load = offered(vm.request, colony.now);
    const double lambda = vm.traffic_share * load.rate;
    const double cpu = effective_cpu(colony, vm);
    if (cpu <= 0.0) {
        if (lambda > 0.0) return {saturation_rtime_, 0.0, 0.0};
        return {0.0, 1.0, 0.0};
    }
    return sla::observe(lambda, cpu / load.demand, saturation_rtime_);
}

} // namespace antcloud
