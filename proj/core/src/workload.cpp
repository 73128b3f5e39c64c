#include <antcloud/workload.hpp>

#include <antcloud/errors.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace antcloud {

LoadProfile::LoadProfile(std::vector<LoadPoint> points) : points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (!std::isfinite(p.time) || !std::isfinite(p.rate) || !std::isfinite(p.demand))
            throw ValidationError("load point " + std::to_string(i) + " is not finite");
        if (p.rate < 0.0) throw ValidationError("load point " + std::to_string(i) + ": rate must be >= 0");
        if (p.demand <= 0.0) throw ValidationError("load point " + std::to_string(i) + ": demand must be > 0");
        if (i > 0 && !(p.time > points_[i - 1].time))
            throw ValidationError("load point " + std::to_string(i) + ": times must strictly increase");
    }
}

LoadPoint LoadProfile::at(SimTime t) const {
    auto it = std::upper_bound(points_.begin(), points_.end(), t,
                               [](SimTime v, const LoadPoint& p) { return v < p.time; });
    if (it == points_.begin()) {
        const double demand = points_.empty() ? 1.0 : points_.front().demand;
        return {t, 0.0, demand};
    }
    return *std::prev(it);
}

std::string_view to_string(WorkloadKind k) {
    switch (k) {
    case WorkloadKind::Constant: return "constant";
    case WorkloadKind::Step: return "step";
    case WorkloadKind::Diurnal: return "diurnal";
    case WorkloadKind::Trace: return "trace";
    }
    return "?";
}

void validate(const WorkloadSpec& s) {
    switch (s.kind) {
    case WorkloadKind::Constant:
        if (!(s.rate >= 0.0)) throw ValidationError("rate must be >= 0");
        if (!(s.demand > 0.0)) throw ValidationError("demand must be > 0");
        break;
    case WorkloadKind::Step:
        if (s.steps.empty()) throw ValidationError("steps must not be empty");
        (void)LoadProfile(s.steps);
        break;
    case WorkloadKind::Diurnal:
        if (!(s.rate >= 0.0)) throw ValidationError("rate must be >= 0");
        if (!(s.demand > 0.0)) throw ValidationError("demand must be > 0");
        if (!(s.amplitude >= 0.0 && s.amplitude <= 1.0)) throw ValidationError("amplitude must lie in [0, 1]");
        if (!(s.period > 0.0)) throw ValidationError("period must be > 0");
        if (!(s.resolution > 0.0)) throw ValidationError("resolution must be > 0");
        break;
    case WorkloadKind::Trace:
        if (s.trace_app.empty()) throw ValidationError("trace app label must not be empty");
        break;
    }
}

namespace workload {

LoadProfile constant(double rate, double demand) { return LoadProfile({{0.0, rate, demand}}); }

LoadProfile diurnal(double mean, double amplitude, double period, double phase, double demand, double resolution,
                    SimTime horizon) {
    std::vector<LoadPoint> pts;
    const auto steps = static_cast<std::size_t>(std::ceil(std::max(horizon, resolution) / resolution));
    pts.reserve(steps);
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * resolution;
        const double mid = t + 0.5 * resolution;
        const double rate = mean * (1.0 + amplitude * std::sin(2.0 * std::numbers::pi * (mid - phase) / period));
        pts.push_back({t, std::max(0.0, rate), demand});
    }
    return LoadProfile(std::move(pts));
}

} // namespace workload

LoadProfile build_profile(const WorkloadSpec& spec, SimTime horizon, const TraceSet& traces) {
    validate(spec);
    switch (spec.kind) {
    case WorkloadKind::Constant: return workload::constant(spec.rate, spec.demand);
    case WorkloadKind::Step: return LoadProfile(spec.steps);
    case WorkloadKind::Diurnal:
        return workload::diurnal(spec.rate, spec.amplitude, spec.period, spec.phase, spec.demand, spec.resolution,
                                 horizon);
    case WorkloadKind::Trace: {
        auto it = traces.find(spec.trace_app);
        if (it == traces.end()) throw NotFoundError("trace has no application '" + spec.trace_app + "'");
        return it->second;
    }
    }
    return {};
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& s, const char* column, int line) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || p != end || !std::isfinite(v))
        throw ConfigError(column, "'" + s + "' is not a number", line, 1);
    return v;
}

} // namespace

TraceSet parse_trace(std::istream& in) {
    std::string line;
    int lineno = 0;
    bool header = false;
    std::map<std::string, std::vector<LoadPoint>> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty() || trim(line).front() == '#') continue;
        const auto cells = split(line);
        if (!header) {
            if (cells != std::vector<std::string>{"time", "app", "rate", "demand"})
                throw ConfigError("header", "expected 'time,app,rate,demand'", lineno, 1);
            header = true;
            continue;
        }
        if (cells.size() != 4) throw ConfigError("row", "expected 4 columns", lineno, 1);
        if (cells[1].empty()) throw ConfigError("app", "empty application label", lineno, 1);
        const LoadPoint p{parse_double(cells[0], "time", lineno), parse_double(cells[2], "rate", lineno),
                          parse_double(cells[3], "demand", lineno)};
        if (p.rate < 0.0) throw ConfigError("rate", "must be >= 0", lineno, 1);
        if (p.demand <= 0.0) throw ConfigError("demand", "must be > 0", lineno, 1);
        auto& pts = rows[cells[1]];
        if (!pts.empty() && !(p.time > pts.back().time))
            throw ConfigError("time", "times of '" + cells[1] + "' must strictly increase", lineno, 1);
        pts.push_back(p);
    }
    if (!header) throw ConfigError("header", "trace is empty", std::max(lineno, 1), 1);
    TraceSet out;
    for (auto& [app, pts] : rows) out.emplace(app, LoadProfile(std::move(pts)));
    return out;
}

TraceSet load_trace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open trace file " + path.string());
    return parse_trace(in);
}

} // namespace antcloud
