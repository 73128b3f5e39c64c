#pragma once

#include <antcloud/domain.hpp>

namespace antcloud {

struct SlaObservation {
    double observed_rtime = 0.0; // seconds, windowed mean response time
    double observed_thput = 1.0; // served / offered over the window
    double window = 0.0;         // seconds
};

/// Band edges of the monitor, as multiples of the SLA targets.
struct SlaThresholds {
    double rtime_ok = 0.90;   // below this fraction of RTIME the response time is comfortable
    double rtime_crit = 0.95; // at or above: critical
    double thput_crit = 1.05; // at or below this multiple of THPUT: critical
    double thput_ok = 1.10;   // above: comfortable

    friend bool operator==(const SlaThresholds&, const SlaThresholds&) = default;
};

struct SlaTarget {
    double rtime = 1.0;
    double thput = 0.8;
};

namespace sla {

/// M/M/1 view of one VM. Offered rate `lambda` and service rate `mu` are in
/// requests per second; an overloaded VM reports `saturation_rtime`.
/// Throws DegenerateVmError when mu <= 0.
SlaObservation observe(double lambda, double mu, double saturation_rtime, double window = 0.0);

/// Classifies an observation into the monitor's verdict lattice.
///
/// cond1 is the response-time condition and cond2 the throughput one. The
/// comfortable code requires both to sit inside their comfortable bands.
/// Otherwise a critical-band hit on either condition wins over a
/// recommended-band hit; within a band the response-time condition selects
/// the clone code and a throughput-only hit selects migration.
SlamCode compute_slam(const SlaTarget& target, const SlaObservation& obs, const SlaThresholds& th = {});

} // namespace sla
} // namespace antcloud
