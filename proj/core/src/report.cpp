#include <antcloud/report.hpp>

#include <antcloud/errors.hpp>

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

namespace antcloud {

using nlohmann::ordered_json;

std::optional<ReportFormat> parse_format(std::string_view s) {
    if (s == "text") return ReportFormat::Text;
    if (s == "csv") return ReportFormat::Csv;
    if (s == "json") return ReportFormat::Json;
    return std::nullopt;
}

namespace {

using Row = std::vector<std::string>;

std::string num(double v) { return format_number(v); }
std::string num(std::uint64_t v) { return std::to_string(v); }

std::vector<std::pair<std::string, std::string>> summary_rows(const MetricsReport& r) {
    return {
        {"policy", r.policy},
        {"seed", num(r.seed)},
        {"config_hash", r.config_hash},
        {"horizon_s", num(r.horizon)},
        {"fleet_energy_j", num(r.fleet_energy_j)},
        {"sla_violation_seconds", num(r.sla_violation_seconds)},
        {"observations", num(r.observations)},
        {"deployments", num(r.deployments)},
        {"rejections", num(r.rejections)},
        {"migrations", num(r.migrations)},
        {"clones_created", num(r.clones_created)},
        {"clones_reclaimed", num(r.clones_reclaimed)},
        {"admin_notifications", num(r.admin_notifications)},
        {"user_notifications", num(r.user_notifications)},
        {"failures_detected", num(r.failures_detected)},
        {"actions", num(r.actions)},
    };
}

const Row kNodeHeader{"node", "name", "energy_j", "mean_cpu_util", "peak_cpu_util", "mean_mem_util", "peak_mem_util"};
const Row kSampleHeader{"time", "active_nodes", "fleet_power_w"};
const Row kSlamHeader{"slam", "count"};
const Row kCompareHeader{"metric", "a", "b", "delta", "ratio"};

std::vector<Row> node_rows(const MetricsReport& r) {
    std::vector<Row> out;
    for (const auto& n : r.nodes) {
        out.push_back({std::to_string(n.node.value), n.name, num(n.energy_j), num(n.mean_cpu_util),
                       num(n.peak_cpu_util), num(n.mean_mem_util), num(n.peak_mem_util)});
    }
    return out;
}

std::vector<Row> sample_rows(const MetricsReport& r) {
    std::vector<Row> out;
    for (const auto& s : r.samples)
        out.push_back({num(s.time), std::to_string(s.active_nodes), num(s.fleet_power_w)});
    return out;
}

std::vector<Row> slam_rows(const MetricsReport& r) {
    std::vector<Row> out;
    for (std::size_t i = 0; i < r.slam_histogram.size(); ++i)
        out.push_back({std::to_string(slam_value(kAllSlamCodes[i])), num(r.slam_histogram[i])});
    return out;
}

std::vector<Row> compare_rows(const ComparisonSummary& s) {
    std::vector<Row> out;
    for (const auto& m : s.metrics)
        out.push_back({m.metric, num(m.a), num(m.b), num(m.delta), m.ratio ? num(*m.ratio) : std::string()});
    return out;
}

std::string dominance_name(const ComparisonSummary& s, Dominance d) {
    switch (d) {
    case Dominance::A: return s.policy_a;
    case Dominance::B: return s.policy_b;
    case Dominance::Tie: return "tie";
    }
    return "?";
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void csv_table(std::ostream& os, std::string_view title, const Row& header, const std::vector<Row>& rows) {
    os << "# " << title << "\n";
    auto line = [&](const Row& r) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
        os << "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
}

void text_table(std::ostream& os, std::string_view title, const Row& header, const std::vector<Row>& rows) {
    std::vector<std::size_t> width(header.size(), 0);
    auto grow = [&](const Row& r) {
        for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    };
    grow(header);
    for (const auto& r : rows) grow(r);
    os << title << "\n";
    auto line = [&](const Row& r) {
        std::string out;
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) out += "  ";
            out += r[i];
            if (i + 1 < r.size()) out.append(width[i] - r[i].size(), ' ');
        }
        os << out << "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
}

std::vector<Row> pairs_to_rows(const std::vector<std::pair<std::string, std::string>>& kv) {
    std::vector<Row> out;
    for (const auto& [k, v] : kv) out.push_back({k, v});
    return out;
}

ordered_json report_json(const MetricsReport& r) {
    ordered_json j;
    j["policy"] = r.policy;
    j["seed"] = r.seed;
    j["config_hash"] = r.config_hash;
    j["horizon_s"] = r.horizon;
    j["fleet_energy_j"] = r.fleet_energy_j;
    j["sla_violation_seconds"] = r.sla_violation_seconds;
    j["observations"] = r.observations;
    j["deployments"] = r.deployments;
    j["rejections"] = r.rejections;
    j["migrations"] = r.migrations;
    j["clones_created"] = r.clones_created;
    j["clones_reclaimed"] = r.clones_reclaimed;
    j["admin_notifications"] = r.admin_notifications;
    j["user_notifications"] = r.user_notifications;
    j["failures_detected"] = r.failures_detected;
    j["actions"] = r.actions;
    ordered_json slam = ordered_json::object();
    for (std::size_t i = 0; i < r.slam_histogram.size(); ++i)
        slam[std::to_string(slam_value(kAllSlamCodes[i]))] = r.slam_histogram[i];
    j["slam_histogram"] = slam;
    j["nodes"] = ordered_json::array();
    for (const auto& n : r.nodes) {
        j["nodes"].push_back({{"node", n.node.value},
                              {"name", n.name},
                              {"energy_j", n.energy_j},
                              {"mean_cpu_util", n.mean_cpu_util},
                              {"peak_cpu_util", n.peak_cpu_util},
                              {"mean_mem_util", n.mean_mem_util},
                              {"peak_mem_util", n.peak_mem_util}});
    }
    j["samples"] = ordered_json::array();
    for (const auto& s : r.samples)
        j["samples"].push_back({{"time", s.time}, {"active_nodes", s.active_nodes}, {"fleet_power_w", s.fleet_power_w}});
    return j;
}

} // namespace

std::string render(const MetricsReport& r, ReportFormat format) {
    std::ostringstream os;
    switch (format) {
    case ReportFormat::Json: os << report_json(r).dump(2) << "\n"; break;
    case ReportFormat::Csv:
        csv_table(os, "summary", {"key", "value"}, pairs_to_rows(summary_rows(r)));
        os << "\n";
        csv_table(os, "slam_histogram", kSlamHeader, slam_rows(r));
        os << "\n";
        csv_table(os, "nodes", kNodeHeader, node_rows(r));
        os << "\n";
        csv_table(os, "samples", kSampleHeader, sample_rows(r));
        break;
    case ReportFormat::Text:
        text_table(os, "Summary", {"metric", "value"}, pairs_to_rows(summary_rows(r)));
        os << "\n";
        text_table(os, "SLAM histogram", kSlamHeader, slam_rows(r));
        os << "\n";
        text_table(os, "Nodes", kNodeHeader, node_rows(r));
        os << "\n";
        text_table(os, "Samples", kSampleHeader, sample_rows(r));
        break;
    }
    return os.str();
}

std::string render(const ComparisonSummary& s, ReportFormat format) {
    std::ostringstream os;
    const std::string energy = dominance_name(s, s.energy);
    const std::string sla = dominance_name(s, s.sla);
    const std::string dom = s.dominates ? dominance_name(s, *s.dominates) : std::string("none");
    switch (format) {
    case ReportFormat::Json: {
        ordered_json j;
        j["policy_a"] = s.policy_a;
        j["policy_b"] = s.policy_b;
        j["seed"] = s.seed;
        j["horizon_s"] = s.horizon;
        j["energy_winner"] = energy;
        j["sla_winner"] = sla;
        j["dominates"] = dom;
        j["metrics"] = ordered_json::array();
        for (const auto& m : s.metrics) {
            ordered_json o{{"metric", m.metric}, {"a", m.a}, {"b", m.b}, {"delta", m.delta}};
            o["ratio"] = m.ratio ? ordered_json(*m.ratio) : ordered_json(nullptr);
            j["metrics"].push_back(o);
        }
        os << j.dump(2) << "\n";
        break;
    }
    case ReportFormat::Csv: {
        const std::vector<std::pair<std::string, std::string>> head{
            {"policy_a", s.policy_a}, {"policy_b", s.policy_b}, {"seed", num(s.seed)}, {"horizon_s", num(s.horizon)},
            {"energy_winner", energy}, {"sla_winner", sla},      {"dominates", dom}};
        csv_table(os, "comparison", {"key", "value"}, pairs_to_rows(head));
        os << "\n";
        csv_table(os, "metrics", kCompareHeader, compare_rows(s));
        break;
    }
    case ReportFormat::Text: {
        os << s.policy_a << " (a) vs " << s.policy_b << " (b), seed " << s.seed << ", horizon " << num(s.horizon)
           << " s\n";
        os << "energy winner: " << energy << "\nsla winner: " << sla << "\ndominates: " << dom << "\n\n";
        text_table(os, "Metrics", kCompareHeader, compare_rows(s));
        break;
    }
    }
    return os.str();
}

std::string render_svg(const MetricsReport& r) {
    constexpr double W = 800, H = 240, L = 60, R = 20, T = 20, B = 30;
    const double pw = W - L - R;
    const double ph = H - T - B;
    double max_nodes = 1.0;
    double max_power = 1.0;
    for (const auto& s : r.samples) {
        max_nodes = std::max(max_nodes, static_cast<double>(s.active_nodes));
        max_power = std::max(max_power, s.fleet_power_w);
    }
    const double span = r.horizon > 0.0 ? r.horizon : 1.0;

    auto panel = [&](std::ostream& os, double top, std::string_view label, std::string_view colour, double max,
                     auto value) {
        os << "<g transform=\"translate(0," << num(top) << ")\">\n";
        os << "<rect x=\"" << num(L) << "\" y=\"" << num(T) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
           << "\" fill=\"none\" stroke=\"#888\"/>\n";
        os << "<text x=\"4\" y=\"" << num(T + 12) << "\" font-size=\"11\">" << label << "</text>\n";
        os << "<text x=\"4\" y=\"" << num(T + 26) << "\" font-size=\"10\">max " << num(max) << "</text>\n";
        os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        double prev_y = T + ph;
        bool first = true;
        for (const auto& s : r.samples) {
            const double x = L + pw * (s.time / span);
            const double y = T + ph - ph * (value(s) / max);
            if (!first) os << num(x) << "," << num(prev_y) << " ";
            os << num(x) << "," << num(y) << " ";
            prev_y = y;
            first = false;
        }
        if (!first) os << num(L + pw) << "," << num(prev_y);
        os << "\"/>\n</g>\n";
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(W) << "\" height=\"" << num(2 * H + 20)
       << "\" font-family=\"sans-serif\">\n";
    os << "<text x=\"" << num(L) << "\" y=\"14\" font-size=\"12\">" << r.policy << ", seed " << r.seed
       << ", horizon " << num(r.horizon) << " s</text>\n";
    panel(os, 10, "active nodes", "#1f77b4", max_nodes,
          [](const MetricSample& s) { return static_cast<double>(s.active_nodes); });
    panel(os, H + 10, "fleet power (W)", "#d62728", max_power, [](const MetricSample& s) { return s.fleet_power_w; });
    os << "</svg>\n";
    return os.str();
}

std::string render_actions(std::span<const TimedAction> log) {
    std::string out;
    for (const auto& a : log) out += to_string(a) + "\n";
    return out;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("cannot write " + path.string());
}

} // namespace antcloud
