#include <antcloud/tunables.hpp>

#include <array>
#include <cmath>

namespace antcloud {

namespace {

const std::array kRegistry{
    TunableSpec{"rtime_ok_factor", &SlaThresholds::rtime_ok, "response time below this fraction of RTIME is comfortable"},
    TunableSpec{"rtime_crit_factor", &SlaThresholds::rtime_crit, "response time at or above this fraction of RTIME is critical"},
    TunableSpec{"thput_crit_factor", &SlaThresholds::thput_crit, "throughput at or below this multiple of THPUT is critical"},
    TunableSpec{"thput_ok_factor", &SlaThresholds::thput_ok, "throughput above this multiple of THPUT is comfortable"},
    TunableSpec{"peak_util", &Tunables::peak_util, "node utilization considered peak"},
    TunableSpec{"desirable_util", &Tunables::desirable_util, "utilization ceiling for consolidation targets"},
    TunableSpec{"low_util", &Tunables::low_util, "utilization below which a node is consolidated"},
    TunableSpec{"basic_vm_cpu", &Resources::cpu, "CPU entitlement of a basic VM (GHz-units)"},
    TunableSpec{"basic_vm_mem", &Resources::mem, "memory entitlement of a basic VM (GB)"},
    TunableSpec{"warm_pool_size", &Tunables::warm_pool_size, "standby nodes kept after the allocation pointer"},
    TunableSpec{"tester_per_minute", &Tunables::tester_per_minute, "tester ants spawned per simulated minute"},
    TunableSpec{"scout_per_minute", &Tunables::scout_per_minute, "scout ants spawned per simulated minute"},
    TunableSpec{"cleaner_per_minute", &Tunables::cleaner_per_minute, "cleaner ants spawned per simulated minute"},
    TunableSpec{"ant_hop_interval", &Tunables::ant_hop_interval, "seconds between ant hops"},
    TunableSpec{"ant_lifetime", &Tunables::ant_lifetime, "seconds an ant traverses before retiring"},
    TunableSpec{"failure_timeout", &Tunables::failure_timeout, "silence after which a node is declared failed"},
    TunableSpec{"saturation_rtime", &Tunables::saturation_rtime, "response time reported by an overloaded VM"},
    TunableSpec{"sort_weight_ppw", &SortWeights::ppw, "weight of processing power per watt in the node order"},
    TunableSpec{"sort_weight_mpw", &SortWeights::mpw, "weight of memory per watt in the node order"},
    TunableSpec{"sample_interval", &Tunables::sample_interval, "seconds between metric samples"},
    TunableSpec{"clone_fraction", &Tunables::clone_fraction, "clone entitlement as a fraction of measured usage"},
    TunableSpec{"migrate_headroom", &Tunables::migrate_headroom, "free capacity a migration target must offer, as a multiple of usage"},
    TunableSpec{"reclaim_margin", &Tunables::reclaim_margin, "margin by which a clone must beat both targets to be reclaimed"},
    TunableSpec{"lease_warning", &Tunables::lease_warning, "seconds before lease expiry when the user is notified"},
    TunableSpec{"migration_latency", &Tunables::migration_latency, "seconds a migrated VM is out of service"},
};

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

std::span<const TunableSpec> tunable_registry() { return kRegistry; }

double get_tunable(const Tunables& t, const TunableSpec& spec) {
    return std::visit(overloaded{
                          [&](double Tunables::*f) { return t.*f; },
                          [&](std::size_t Tunables::*f) { return static_cast<double>(t.*f); },
                          [&](double SlaThresholds::*f) { return t.sla.*f; },
                          [&](double Resources::*f) { return t.basic_vm.*f; },
                          [&](double SortWeights::*f) { return t.sort_weights.*f; },
                      },
                      spec.field);
}

void set_tunable(Tunables& t, const TunableSpec& spec, double value) {
    std::visit(overloaded{
                   [&](double Tunables::*f) { t.*f = value; },
                   [&](std::size_t Tunables::*f) { t.*f = static_cast<std::size_t>(std::llround(value)); },
                   [&](double SlaThresholds::*f) { t.sla.*f = value; },
                   [&](double Resources::*f) { t.basic_vm.*f = value; },
                   [&](double SortWeights::*f) { t.sort_weights.*f = value; },
               },
               spec.field);
}

} // namespace antcloud
