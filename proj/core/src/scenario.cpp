#include <antcloud/scenario.hpp>

#include <antcloud/errors.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

namespace antcloud {

using nlohmann::ordered_json;

std::string_view to_string(Policy p) {
    switch (p) {
    case Policy::Ant: return "ant";
    case Policy::RoundRobin: return "round_robin";
    case Policy::FirstFit: return "first_fit";
    }
    return "?";
}

std::optional<Policy> parse_policy(std::string_view s) {
    for (Policy p : {Policy::Ant, Policy::RoundRobin, Policy::FirstFit}) {
        if (to_string(p) == s) return p;
    }
    return std::nullopt;
}

std::string_view to_string(TopologyKind k) {
    switch (k) {
    case TopologyKind::Ring: return "ring";
    case TopologyKind::Full: return "full";
    case TopologyKind::Explicit: return "explicit";
    }
    return "?";
}

std::vector<std::vector<std::uint32_t>> adjacency(const ScenarioConfig& cfg) {
    const auto n = static_cast<std::uint32_t>(cfg.nodes.size());
    std::vector<std::set<std::uint32_t>> adj(n);
    auto link = [&](std::uint32_t a, std::uint32_t b) {
        if (a == b || a >= n || b >= n) return;
        adj[a].insert(b);
        adj[b].insert(a);
    };
    switch (cfg.topology) {
    case TopologyKind::Ring:
        for (std::uint32_t i = 0; i + 1 < n; ++i) link(i, i + 1);
        if (n > 2) link(n - 1, 0);
        break;
    case TopologyKind::Full:
        for (std::uint32_t i = 0; i < n; ++i) {
            for (std::uint32_t j = i + 1; j < n; ++j) link(i, j);
        }
        break;
    case TopologyKind::Explicit:
        for (std::uint32_t i = 0; i < n; ++i) {
            for (std::uint32_t j : cfg.nodes[i].neighbors) link(i, j);
        }
        break;
    }
    std::vector<std::vector<std::uint32_t>> out(n);
    for (std::uint32_t i = 0; i < n; ++i) out[i].assign(adj[i].begin(), adj[i].end());
    return out;
}

namespace {

std::string idx(std::string_view base, std::size_t i) { return std::string(base) + "[" + std::to_string(i) + "]"; }

void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw ConfigError(field, what);
}

void check_node(const NodeSpec& n, const std::string& field) {
    require(n.cpu > 0.0 && std::isfinite(n.cpu), field + ".cpu", "must be > 0");
    require(n.mem > 0.0 && std::isfinite(n.mem), field + ".mem", "must be > 0");
    try {
        validate(n.power);
    } catch (const Error& e) {
        throw ConfigError(field + ".power", e.what());
    }
}

void check_tunables(const Tunables& t) {
    const auto& s = t.sla;
    require(s.rtime_ok > 0.0 && s.rtime_ok < s.rtime_crit, "tunables.rtime_ok_factor", "must be > 0 and < rtime_crit_factor");
    require(s.thput_crit > 0.0 && s.thput_crit < s.thput_ok, "tunables.thput_crit_factor", "must be > 0 and < thput_ok_factor");
    require(t.low_util > 0.0 && t.low_util <= t.desirable_util, "tunables.low_util", "must lie in (0, desirable_util]");
    require(t.desirable_util <= t.peak_util, "tunables.desirable_util", "must not exceed peak_util");
    require(t.peak_util <= 1.0, "tunables.peak_util", "must be <= 1");
    require(t.basic_vm.cpu > 0.0, "tunables.basic_vm_cpu", "must be > 0");
    require(t.basic_vm.mem > 0.0, "tunables.basic_vm_mem", "must be > 0");
    require(t.tester_per_minute >= 0.0, "tunables.tester_per_minute", "must be >= 0");
    require(t.scout_per_minute >= 0.0, "tunables.scout_per_minute", "must be >= 0");
    require(t.cleaner_per_minute >= 0.0, "tunables.cleaner_per_minute", "must be >= 0");
    require(t.ant_hop_interval > 0.0, "tunables.ant_hop_interval", "must be > 0");
    require(t.ant_lifetime >= 0.0, "tunables.ant_lifetime", "must be >= 0");
    require(t.failure_timeout >= 0.0, "tunables.failure_timeout", "must be >= 0");
    require(t.saturation_rtime > 0.0, "tunables.saturation_rtime", "must be > 0");
    require(t.sort_weights.ppw >= 0.0 && t.sort_weights.mpw >= 0.0 &&
                std::abs(t.sort_weights.ppw + t.sort_weights.mpw - 1.0) <= 1e-9,
            "tunables.sort_weight_ppw", "sort weights must be >= 0 and sum to 1");
    require(t.sample_interval > 0.0, "tunables.sample_interval", "must be > 0");
    require(t.clone_fraction > 0.0 && t.clone_fraction <= 1.0, "tunables.clone_fraction", "must lie in (0, 1]");
    require(t.migrate_headroom >= 1.0, "tunables.migrate_headroom", "must be >= 1");
    require(t.reclaim_margin >= 0.0 && t.reclaim_margin < 1.0, "tunables.reclaim_margin", "must lie in [0, 1)");
    require(t.lease_warning >= 0.0, "tunables.lease_warning", "must be >= 0");
    require(t.migration_latency >= 0.0, "tunables.migration_latency", "must be >= 0");
}

bool connected(const std::vector<std::vector<std::uint32_t>>& adj) {
    if (adj.empty()) return true;
    std::vector<bool> seen(adj.size(), false);
    std::queue<std::uint32_t> q;
    q.push(0);
    seen[0] = true;
    std::size_t count = 1;
    while (!q.empty()) {
        const auto v = q.front();
        q.pop();
        for (auto w : adj[v]) {
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                q.push(w);
            }
        }
    }
    return count == adj.size();
}

} // namespace

void validate(const ScenarioConfig& cfg) {
    require(cfg.horizon > 0.0 && std::isfinite(cfg.horizon), "horizon", "must be > 0");
    require(!cfg.nodes.empty(), "nodes", "at least one node is required");
    check_tunables(cfg.tunables);
    const auto n = cfg.nodes.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto field = idx("nodes", i);
        check_node(cfg.nodes[i], field);
        for (auto j : cfg.nodes[i].neighbors) {
            require(j < n, field + ".neighbors", "unknown node index " + std::to_string(j));
            require(j != i, field + ".neighbors", "a node cannot neighbour itself");
        }
        if (cfg.topology != TopologyKind::Explicit)
            require(cfg.nodes[i].neighbors.empty(), field + ".neighbors", "only allowed with explicit topology");
    }
    require(connected(adjacency(cfg)), "topology", "node graph is not connected");

    for (std::size_t i = 0; i < cfg.requests.size(); ++i) {
        const auto& r = cfg.requests[i];
        const auto field = idx("requests", i);
        require(r.arrival >= 0.0 && std::isfinite(r.arrival), field + ".arrival", "must be >= 0");
        require(r.rtime > 0.0, field + ".rtime", "must be > 0");
        require(r.thput > 0.0 && r.thput <= 0.9, field + ".thput",
                "must lie in (0, 0.9] so that the comfortable band is reachable");
        require(r.lease > 0.0, field + ".lease", "must be > 0");
        try {
            validate(r.workload);
        } catch (const Error& e) {
            throw ConfigError(field + ".workload", e.what());
        }
        if (r.workload.kind == WorkloadKind::Trace)
            require(cfg.traces.contains(r.workload.trace_app), field + ".workload.app",
                    "'" + r.workload.trace_app + "' not found in trace_file");
    }
    for (std::size_t i = 0; i < cfg.faults.size(); ++i) {
        const auto& f = cfg.faults[i];
        require(f.node < n, idx("faults", i) + ".node", "unknown node index " + std::to_string(f.node));
        require(f.at >= 0.0, idx("faults", i) + ".at", "must be >= 0");
    }
    std::set<std::string> keys;
    for (std::size_t i = 0; i < cfg.joins.size(); ++i) {
        const auto& j = cfg.joins[i];
        const auto field = idx("joins", i);
        require(j.at >= 0.0, field + ".at", "must be >= 0");
        require(!j.key.empty(), field + ".key", "must not be empty");
        require(keys.insert(j.key).second, field + ".key", "duplicate key '" + j.key + "'");
        if (j.contact) require(*j.contact < n, field + ".contact", "unknown node index");
        require(j.node.neighbors.empty(), field + ".node.neighbors", "links are assigned at registration");
        check_node(j.node, field + ".node");
    }
}

namespace {

/// Typed field reader over one JSON object that rejects unknown keys.
class Reader {
public:
    Reader(const ordered_json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }

    std::string field(std::string_view key) const {
        return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
    }

    const ordered_json* find(std::string_view key) {
        seen_.insert(std::string(key));
        auto it = j_.find(std::string(key));
        return it == j_.end() ? nullptr : &*it;
    }

    void number(std::string_view key, double& out) {
        if (const auto* v = find(key)) {
            if (!v->is_number()) throw ConfigError(field(key), "expected a number");
            out = v->get<double>();
        }
    }

    void count(std::string_view key, std::uint64_t& out) {
        if (const auto* v = find(key)) {
            if (!v->is_number_unsigned()) throw ConfigError(field(key), "expected a non-negative integer");
            out = v->get<std::uint64_t>();
        }
    }

    void index(std::string_view key, std::uint32_t& out) {
        std::uint64_t v = out;
        count(key, v);
        if (v > 0xffffffffu) throw ConfigError(field(key), "out of range");
        out = static_cast<std::uint32_t>(v);
    }

    void text(std::string_view key, std::string& out) {
        if (const auto* v = find(key)) {
            if (!v->is_string()) throw ConfigError(field(key), "expected a string");
            out = v->get<std::string>();
        }
    }

    const ordered_json* array(std::string_view key) {
        const auto* v = find(key);
        if (v && !v->is_array()) throw ConfigError(field(key), "expected an array");
        return v;
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.contains(it.key())) throw ConfigError(field(it.key()), "unknown key");
        }
    }

private:
    const ordered_json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

PowerProfile read_power(const ordered_json& j, const std::string& path) {
    PowerProfile p;
    Reader r(j, path);
    r.number("p_base", p.p_base);
    r.number("p_cpu_peak", p.p_cpu_peak);
    r.number("p_mem_peak", p.p_mem_peak);
    r.number("p_standby", p.p_standby);
    r.number("wake_latency", p.wake_latency);
    r.number("boot_latency", p.boot_latency);
    r.finish();
    return p;
}

NodeSpec read_node(const ordered_json& j, const std::string& path, std::size_t i) {
    NodeSpec n;
    n.name = "node" + std::to_string(i);
    Reader r(j, path);
    r.text("name", n.name);
    r.number("cpu", n.cpu);
    r.number("mem", n.mem);
    if (const auto* p = r.find("power")) n.power = read_power(*p, r.field("power"));
    if (const auto* a = r.array("neighbors")) {
        for (std::size_t k = 0; k < a->size(); ++k) {
            const auto& v = (*a)[k];
            if (!v.is_number_unsigned()) throw ConfigError(idx(r.field("neighbors"), k), "expected a node index");
            n.neighbors.push_back(v.get<std::uint32_t>());
        }
    }
    r.finish();
    return n;
}

WorkloadSpec read_workload(const ordered_json& j, const std::string& path) {
    WorkloadSpec w;
    Reader r(j, path);
    std::string kind = "constant";
    r.text("kind", kind);
    if (kind == "constant") {
        w.kind = WorkloadKind::Constant;
        r.number("rate", w.rate);
        r.number("demand", w.demand);
    } else if (kind == "step") {
        w.kind = WorkloadKind::Step;
        const auto* a = r.array("steps");
        if (!a) throw ConfigError(r.field("steps"), "required for a step workload");
        for (std::size_t k = 0; k < a->size(); ++k) {
            LoadPoint p;
            Reader s((*a)[k], idx(r.field("steps"), k));
            s.number("at", p.time);
            s.number("rate", p.rate);
            s.number("demand", p.demand);
            s.finish();
            w.steps.push_back(p);
        }
    } else if (kind == "diurnal") {
        w.kind = WorkloadKind::Diurnal;
        r.number("rate", w.rate);
        r.number("demand", w.demand);
        r.number("amplitude", w.amplitude);
        r.number("period", w.period);
        r.number("phase", w.phase);
        r.number("resolution", w.resolution);
    } else if (kind == "trace") {
        w.kind = WorkloadKind::Trace;
        r.text("app", w.trace_app);
    } else {
        throw ConfigError(r.field("kind"), "unknown workload kind '" + kind + "'");
    }
    r.finish();
    return w;
}

RequestSpec read_request(const ordered_json& j, const std::string& path, std::size_t i) {
    RequestSpec q;
    q.app = "app" + std::to_string(i);
    Reader r(j, path);
    r.number("arrival", q.arrival);
    r.number("rtime", q.rtime);
    r.number("thput", q.thput);
    r.number("lease", q.lease);
    r.text("app", q.app);
    r.text("os", q.os);
    if (const auto* w = r.find("workload")) q.workload = read_workload(*w, r.field("workload"));
    r.finish();
    return q;
}

void read_tunables(const ordered_json& j, Tunables& t) {
    if (!j.is_object()) throw ConfigError("tunables", "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto reg = tunable_registry();
        auto spec = std::find_if(reg.begin(), reg.end(), [&](const TunableSpec& s) { return s.key == it.key(); });
        if (spec == reg.end()) throw ConfigError("tunables." + it.key(), "unknown tunable");
        if (!it->is_number()) throw ConfigError("tunables." + it.key(), "expected a number");
        const double v = it->get<double>();
        if (std::holds_alternative<std::size_t Tunables::*>(spec->field) &&
            (v < 0.0 || v != std::floor(v)))
            throw ConfigError("tunables." + it.key(), "expected a non-negative integer");
        set_tunable(t, *spec, v);
    }
}

/// 1-based line and column of a byte offset.
std::pair<int, int> locate(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

ordered_json node_json(const NodeSpec& n, bool with_neighbors) {
    ordered_json j;
    j["name"] = n.name;
    j["cpu"] = n.cpu;
    j["mem"] = n.mem;
    j["power"] = {{"p_base", n.power.p_base},         {"p_cpu_peak", n.power.p_cpu_peak},
                  {"p_mem_peak", n.power.p_mem_peak}, {"p_standby", n.power.p_standby},
                  {"wake_latency", n.power.wake_latency}, {"boot_latency", n.power.boot_latency}};
    if (with_neighbors) j["neighbors"] = n.neighbors;
    return j;
}

ordered_json workload_json(const WorkloadSpec& w) {
    ordered_json j;
    j["kind"] = std::string(to_string(w.kind));
    switch (w.kind) {
    case WorkloadKind::Constant:
        j["rate"] = w.rate;
        j["demand"] = w.demand;
        break;
    case WorkloadKind::Step:
        j["steps"] = ordered_json::array();
        for (const auto& p : w.steps) j["steps"].push_back({{"at", p.time}, {"rate", p.rate}, {"demand", p.demand}});
        break;
    case WorkloadKind::Diurnal:
        j["rate"] = w.rate;
        j["demand"] = w.demand;
        j["amplitude"] = w.amplitude;
        j["period"] = w.period;
        j["phase"] = w.phase;
        j["resolution"] = w.resolution;
        break;
    case WorkloadKind::Trace: j["app"] = w.trace_app; break;
    }
    return j;
}

ordered_json config_json(const ScenarioConfig& c, bool with_seed) {
    ordered_json j;
    if (with_seed) j["seed"] = c.seed;
    j["horizon"] = c.horizon;
    j["policy"] = std::string(to_string(c.policy));
    ordered_json t = ordered_json::object();
    for (const auto& spec : tunable_registry()) {
        const double v = get_tunable(c.tunables, spec);
        if (std::holds_alternative<std::size_t Tunables::*>(spec.field)) {
            t[std::string(spec.key)] = static_cast<std::uint64_t>(v);
        } else {
            t[std::string(spec.key)] = v;
        }
    }
    j["tunables"] = t;
    j["topology"] = std::string(to_string(c.topology));
    j["nodes"] = ordered_json::array();
    for (const auto& n : c.nodes) j["nodes"].push_back(node_json(n, c.topology == TopologyKind::Explicit));
    j["trace_file"] = c.trace_file;
    j["requests"] = ordered_json::array();
    for (const auto& r : c.requests) {
        j["requests"].push_back({{"arrival", r.arrival},
                                 {"rtime", r.rtime},
                                 {"thput", r.thput},
                                 {"lease", r.lease},
                                 {"app", r.app},
                                 {"os", r.os},
                                 {"workload", workload_json(r.workload)}});
    }
    j["faults"] = ordered_json::array();
    for (const auto& f : c.faults) j["faults"].push_back({{"node", f.node}, {"at", f.at}, {"kind", "crash"}});
    j["joins"] = ordered_json::array();
    for (const auto& jn : c.joins) {
        ordered_json o{{"at", jn.at}, {"key", jn.key}};
        o["contact"] = jn.contact ? ordered_json(*jn.contact) : ordered_json(nullptr);
        o["node"] = node_json(jn.node, false);
        j["joins"].push_back(o);
    }
    return j;
}

} // namespace

ScenarioConfig parse_scenario(std::string_view text, const std::filesystem::path& base_dir) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, col] = locate(text, e.byte > 0 ? e.byte - 1 : 0);
        std::string what = e.what();
        if (auto p = what.find("parse error"); p != std::string::npos) what = what.substr(p);
        throw ConfigError("", what, line, col);
    }

    ScenarioConfig c;
    Reader r(doc, "");
    r.count("seed", c.seed);
    r.number("horizon", c.horizon);
    std::string policy = std::string(to_string(c.policy));
    r.text("policy", policy);
    if (auto p = parse_policy(policy)) {
        c.policy = *p;
    } else {
        throw ConfigError("policy", "unknown policy '" + policy + "'");
    }
    if (const auto* t = r.find("tunables")) read_tunables(*t, c.tunables);
    std::string topo = "ring";
    r.text("topology", topo);
    if (topo == "ring") {
        c.topology = TopologyKind::Ring;
    } else if (topo == "full") {
        c.topology = TopologyKind::Full;
    } else if (topo == "explicit") {
        c.topology = TopologyKind::Explicit;
    } else {
        throw ConfigError("topology", "unknown topology '" + topo + "'");
    }
    if (const auto* a = r.array("nodes")) {
        for (std::size_t i = 0; i < a->size(); ++i) c.nodes.push_back(read_node((*a)[i], idx("nodes", i), i));
    }
    r.text("trace_file", c.trace_file);
    if (const auto* a = r.array("requests")) {
        for (std::size_t i = 0; i < a->size(); ++i)
            c.requests.push_back(read_request((*a)[i], idx("requests", i), i));
    }
    if (const auto* a = r.array("faults")) {
        for (std::size_t i = 0; i < a->size(); ++i) {
            FaultSpec f;
            Reader fr((*a)[i], idx("faults", i));
            fr.index("node", f.node);
            fr.number("at", f.at);
            std::string kind = "crash";
            fr.text("kind", kind);
            if (kind != "crash") throw ConfigError(fr.field("kind"), "only 'crash' faults are supported");
            fr.finish();
            c.faults.push_back(f);
        }
    }
    if (const auto* a = r.array("joins")) {
        for (std::size_t i = 0; i < a->size(); ++i) {
            JoinSpec js;
            Reader jr((*a)[i], idx("joins", i));
            jr.number("at", js.at);
            jr.text("key", js.key);
            if (const auto* ct = jr.find("contact"); ct && !ct->is_null()) {
                if (!ct->is_number_unsigned()) throw ConfigError(jr.field("contact"), "expected a node index or null");
                js.contact = ct->get<std::uint32_t>();
            }
            const auto* node = jr.find("node");
            if (!node) throw ConfigError(jr.field("node"), "required");
            js.node = read_node(*node, jr.field("node"), c.nodes.size() + i);
            jr.finish();
            c.joins.push_back(std::move(js));
        }
    }
    r.finish();

    if (!c.trace_file.empty()) {
        std::filesystem::path p = c.trace_file;
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        try {
            c.traces = load_trace(p);
        } catch (const ConfigError& e) {
            throw ConfigError("trace_file", p.string() + ": " + e.what());
        }
    }
    validate(c);
    return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open scenario file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), path.parent_path());
}

std::string to_json(const ScenarioConfig& cfg) { return config_json(cfg, true).dump(2) + "\n"; }

std::string config_hash(const ScenarioConfig& cfg) {
    const std::string doc = config_json(cfg, false).dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : doc) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
        h >>= 4;
    }
    return out;
}

} // namespace antcloud
