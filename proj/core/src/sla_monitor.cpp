#include <antcloud/sla_monitor.hpp>

#include <antcloud/errors.hpp>

#include <algorithm>

namespace antcloud::sla {

SlaObservation observe(double lambda, double mu, double saturation_rtime, double window) {
    if (!(mu > 0.0)) throw DegenerateVmError("service rate must be positive");
    SlaObservation obs;
    obs.window = window;
    obs.observed_thput = lambda > 0.0 ? std::min(lambda, mu) / lambda : 1.0;
    obs.observed_rtime = lambda < mu ? 1.0 / (mu - lambda) : saturation_rtime;
    return obs;
}

SlamCode compute_slam(const SlaTarget& target, const SlaObservation& obs, const SlaThresholds& th) {
    const double rt = obs.observed_rtime;
    const double tp = obs.observed_thput;

    const bool rt_critical = rt >= th.rtime_crit * target.rtime;
    const bool tp_critical = tp <= th.thput_crit * target.thput;
    if (rt_critical || tp_critical) return rt_critical ? SlamCode::CritClone : SlamCode::CritMigrate;

    const bool rt_recommended = rt >= th.rtime_ok * target.rtime;
    const bool tp_recommended = tp <= th.thput_ok * target.thput;
    if (rt_recommended || tp_recommended) return rt_recommended ? SlamCode::RecClone : SlamCode::RecMigrate;

    return SlamCode::Ok;
}

} // namespace antcloud::sla
