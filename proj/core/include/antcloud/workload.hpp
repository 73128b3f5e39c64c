#pragma once

// Offered load per application: piecewise-constant (rate, demand) signals
// built from inline generators or a trace file.

#include <antcloud/domain.hpp>

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace antcloud {

struct LoadPoint {
    SimTime time = 0.0;
    double rate = 0.0;   // requests per second
    double demand = 0.0; // GHz-seconds per request

    friend bool operator==(const LoadPoint&, const LoadPoint&) = default;
};

/// Piecewise-constant load: each point holds until the next one. Before the
/// first point the rate is zero.
class LoadProfile {
public:
    LoadProfile() = default;
    /// Throws ValidationError unless times strictly increase, rates are
    /// non-negative and demands positive.
    explicit LoadProfile(std::vector<LoadPoint> points);

    LoadPoint at(SimTime t) const;
    const std::vector<LoadPoint>& points() const { return points_; }
    bool empty() const { return points_.empty(); }

    friend bool operator==(const LoadProfile&, const LoadProfile&) = default;

private:
    std::vector<LoadPoint> points_;
};

/// Per-application profiles keyed by application label.
using TraceSet = std::map<std::string, LoadProfile>;

enum class WorkloadKind : std::uint8_t { Constant, Step, Diurnal, Trace };

std::string_view to_string(WorkloadKind k);

/// Inline description of one application's load, as written in scenarios.
struct WorkloadSpec {
    WorkloadKind kind = WorkloadKind::Constant;
    double rate = 0.0;   // constant rate, diurnal mean
    double demand = 0.1; // constant and diurnal per-request demand
    std::vector<LoadPoint> steps;
    double amplitude = 0.0; // diurnal: relative swing in [0, 1]
    double period = kSecondsPerDay;
    double phase = 0.0;
    double resolution = 600.0; // diurnal sampling step
    std::string trace_app;     // trace: label in the trace file

    friend bool operator==(const WorkloadSpec&, const WorkloadSpec&) = default;
};

/// Throws ValidationError naming the bad field.
void validate(const WorkloadSpec& spec);

/// Materializes a spec over [0, horizon]. Trace specs look their label up
/// in `traces` (NotFoundError when absent).
LoadProfile build_profile(const WorkloadSpec& spec, SimTime horizon, const TraceSet& traces = {});

namespace workload {

LoadProfile constant(double rate, double demand);
/// rate(t) = mean * (1 + amplitude * sin(2*pi*(t - phase) / period)), held
/// constant over `resolution`-long steps at the value of each step's midpoint.
LoadProfile diurnal(double mean, double amplitude, double period, double phase, double demand, double resolution,
                    SimTime horizon);

} // namespace workload

/// Reads a `time,app,rate,demand` trace. Rows of one application must have
/// strictly increasing times. Throws ConfigError with the line number.
TraceSet parse_trace(std::istream& in);
/// Throws IoError when the file cannot be opened.
TraceSet load_trace(const std::filesystem::path& path);

} // namespace antcloud
