#pragma once

#include <antcloud/domain.hpp>
#include <antcloud/resource_table.hpp>
#include <antcloud/sla_monitor.hpp>

#include <cstddef>
#include <span>
#include <string_view>
#include <variant>

namespace antcloud {

/// Every knob the agents consult. Defaults are the reference
/// thresholds; everything is overridable from a scenario file.
struct Tunables {
    SlaThresholds sla;
    double peak_util = 0.90;      // node above this on CPU or memory is overloaded
    double desirable_util = 0.80; // consolidation never fills a target past this
    double low_util = 0.50;       // node below this on both is a consolidation candidate
    Resources basic_vm{1.0, 1.0};
    std::size_t warm_pool_size = 3;

    double tester_per_minute = 1.0;
    double scout_per_minute = 1.0;
    double cleaner_per_minute = 1.0;
    double ant_hop_interval = 1.0; // s between hops
    double ant_lifetime = 60.0;    // s an ant keeps traversing after spawn

    double failure_timeout = 30.0;
    double saturation_rtime = 10.0;
    SortWeights sort_weights;
    double sample_interval = 10.0;

    double clone_fraction = 0.5;   // clone entitlement as a fraction of measured usage
    double migrate_headroom = 1.3; // migration target must offer this multiple of usage
    double reclaim_margin = 0.3;   // clone removed when both metrics beat targets by this margin
    double lease_warning = 7 * kSecondsPerDay;
    double migration_latency = 0.0;

    friend bool operator==(const Tunables&, const Tunables&) = default;
};

/// Registry entry: a scenario-file key bound to one field of Tunables.
struct TunableSpec {
    std::string_view key;
    std::variant<double Tunables::*, std::size_t Tunables::*, double SlaThresholds::*, double Resources::*,
                 double SortWeights::*>
        field;
    std::string_view description;
};

/// All tunables in file order.
std::span<const TunableSpec> tunable_registry();

/// Reads/writes a registry field on a Tunables value.
double get_tunable(const Tunables& t, const TunableSpec& spec);
void set_tunable(Tunables& t, const TunableSpec& spec, double value);

} // namespace antcloud
