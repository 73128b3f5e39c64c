#pragma once

#include <antcloud/actions.hpp>
#include <antcloud/domain.hpp>
#include <antcloud/power.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace antcloud {

class Colony;
class Telemetry;

struct NodeMetrics {
    NodeId node;
    std::string name;
    double energy_j = 0.0;
    double mean_cpu_util = 0.0;
    double peak_cpu_util = 0.0;
    double mean_mem_util = 0.0;
    double peak_mem_util = 0.0;
};

struct MetricSample {
    SimTime time = 0.0;
    std::size_t active_nodes = 0;
    double fleet_power_w = 0.0;
};

struct MetricsReport {
    std::string policy;
    std::uint64_t seed = 0;
    std::string config_hash;
    SimTime horizon = 0.0;

    double fleet_energy_j = 0.0;
    std::vector<NodeMetrics> nodes;
    double sla_violation_seconds = 0.0;
    std::vector<MetricSample> samples;
    std::array<std::uint64_t, 5> slam_histogram{}; // in kAllSlamCodes order
    std::uint64_t observations = 0;

    std::uint64_t deployments = 0;
    std::uint64_t rejections = 0;
    std::uint64_t migrations = 0;
    std::uint64_t clones_created = 0;
    std::uint64_t clones_reclaimed = 0;
    std::uint64_t admin_notifications = 0;
    std::uint64_t user_notifications = 0;
    std::uint64_t failures_detected = 0;
    std::uint64_t actions = 0;
};

/// Accumulates energy, SLA violation time and utilization while the engine
/// runs. Every quantity is constant between events, so each interval is
/// billed exactly once at the state that held during it.
class MetricsCollector {
public:
    /// Bills [from, to) at the colony's current state.
    void bill(const Colony& colony, const Telemetry& telemetry, SimTime from, SimTime to);
    void sample(const Colony& colony, const Telemetry& telemetry);

    /// Any live VM of a running application breaching its raw targets.
    static bool violating(const Colony& colony, const Telemetry& telemetry);

    const power::EnergyAccumulator& energy() const { return energy_; }
    double sla_violation_seconds() const { return violation_; }

    MetricsReport finish(const Colony& colony, SimTime horizon) const;

private:
    struct UtilTrack {
        double cpu_seconds = 0.0;
        double mem_seconds = 0.0;
        double peak_cpu = 0.0;
        double peak_mem = 0.0;
    };

    power::EnergyAccumulator energy_;
    double violation_ = 0.0;
    std::vector<UtilTrack> util_;
    std::vector<MetricSample> samples_;
};

/// Counts the action kinds the report summarizes.
void tally_actions(std::span<const TimedAction> log, MetricsReport& report);

struct MetricComparison {
    std::string metric;
    double a = 0.0;
    double b = 0.0;
    double delta = 0.0;          // a - b
    std::optional<double> ratio; // a / b, absent when b == 0
};

enum class Dominance : std::uint8_t { A, B, Tie };

std::string_view to_string(Dominance d);

struct ComparisonSummary {
    std::string policy_a;
    std::string policy_b;
    std::uint64_t seed = 0;
    SimTime horizon = 0.0;
    std::vector<MetricComparison> metrics;
    Dominance energy = Dominance::Tie; // lower energy wins
    Dominance sla = Dominance::Tie;    // lower violation time wins
    /// Set when one policy is no worse on both and strictly better on one.
    std::optional<Dominance> dominates;
};

/// Throws ComparisonError when the horizons differ.
ComparisonSummary compare(const MetricsReport& a, const MetricsReport& b);

} // namespace antcloud
