#include <antcloud/domain.hpp>

#include <antcloud/errors.hpp>

namespace antcloud {

std::string_view to_string(NodeState s) {
    switch (s) {
    case NodeState::Active: return "active";
    case NodeState::Standby: return "standby";
    case NodeState::Off: return "off";
    case NodeState::Failed: return "failed";
    }
    return "?";
}

void validate(const PowerProfile& p) {
    if (!(p.p_base >= 0.0) || !(p.p_cpu_peak >= 0.0) || !(p.p_mem_peak >= 0.0) || !(p.p_standby >= 0.0)) {
        throw InvalidProfileError("wattages must be non-negative");
    }
    if (!(p.p_cpu_peak > 0.0) || !(p.p_mem_peak > 0.0)) {
        throw InvalidProfileError("CPU and memory peak power must be positive");
    }
    if (!(p.p_standby < p.p_base)) throw InvalidProfileError("standby power must be below base power");
    if (!(p.wake_latency >= 0.0) || !(p.boot_latency >= 0.0)) {
        throw InvalidProfileError("latencies must be non-negative");
    }
    if (!(p.wake_latency < p.boot_latency)) throw InvalidProfileError("wake latency must be below boot latency");
}

void validate(const ServiceRequest& r) {
    if (!(r.thput_target > 0.0 && r.thput_target <= 1.0)) throw ValidationError("throughput target must be in (0, 1]");
    if (!(r.rtime_target > 0.0)) throw ValidationError("response-time target must be positive");
    if (!(r.lease_duration > 0.0)) throw ValidationError("lease duration must be positive");
}

std::size_t slam_index(SlamCode c) {
    switch (c) {
    case SlamCode::Ok: return 0;
    case SlamCode::RecMigrate: return 1;
    case SlamCode::RecClone: return 2;
    case SlamCode::CritMigrate: return 3;
    case SlamCode::CritClone: return 4;
    }
    return 0;
}

} // namespace antcloud
