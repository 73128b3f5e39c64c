#include <antcloud/cli.hpp>

#include <antcloud/engine.hpp>
#include <antcloud/errors.hpp>
#include <antcloud/report.hpp>

#include <CLI11.hpp>

#include <ostream>
#include <sstream>

namespace antcloud {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ReportFormat format_or_throw(const std::string& s) {
    if (auto f = parse_format(s)) return *f;
    throw UsageError("unknown format '" + s + "' (expected text, csv or json)");
}

Policy policy_or_throw(const std::string& s) {
    if (auto p = parse_policy(s)) return *p;
    throw UsageError("unknown policy '" + s + "' (expected ant, round_robin or first_fit)");
}

void emit(const std::string& text, const std::string& output, std::ostream& out) {
    if (output.empty()) {
        out << text;
    } else {
        write_file(output, text);
    }
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ant-colony data-center simulator", "antcloud"};
    app.require_subcommand(1);

    std::string scenario;
    std::string format = "text";
    std::string output;
    std::string policy;
    std::string plot;
    std::string actions;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> policies;
    std::string trace;

    auto* run = app.add_subcommand("run", "Simulate one scenario and print its metrics report");
    run->add_option("scenario", scenario, "Scenario file (JSON)")->required();
    run->add_option("--format", format, "text, csv or json");
    run->add_option("-o,--output", output, "Write the report here instead of stdout");
    run->add_option("--seed", seed, "Override the scenario seed");
    run->add_option("--policy", policy, "Override the policy: ant, round_robin, first_fit");
    run->add_option("--plot", plot, "Write active nodes and fleet power as SVG");
    run->add_option("--actions", actions, "Write the action log, one line per action");

    auto* cmp = app.add_subcommand("compare", "Run several policies on one scenario and compare them");
    cmp->add_option("scenario", scenario, "Scenario file (JSON)")->required();
    cmp->add_option("--policies", policies, "Comma-separated policy names (at least two)")
        ->required()
        ->delimiter(',');
    cmp->add_option("--format", format, "text, csv or json");
    cmp->add_option("-o,--output", output, "Write the summary here instead of stdout");
    cmp->add_option("--seed", seed, "Override the scenario seed");

    auto* val = app.add_subcommand("validate", "Check a scenario file");
    val->add_option("scenario", scenario, "Scenario file (JSON)")->required();

    auto* tc = app.add_subcommand("trace-check", "Check a workload trace file");
    tc->add_option("trace", trace, "Trace file (time,app,rate,demand)")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (val->parsed()) {
            const auto cfg = load_scenario(scenario);
            out << "valid: " << cfg.nodes.size() << " nodes, " << cfg.requests.size() << " requests, config hash "
                << config_hash(cfg) << "\n";
            return kExitOk;
        }
        if (tc->parsed()) {
            const auto traces = load_trace(trace);
            std::size_t rows = 0;
            for (const auto& [app_label, profile] : traces) rows += profile.points().size();
            out << "ok: " << traces.size() << " applications, " << rows << " rows\n";
            return kExitOk;
        }

        const auto fmt = format_or_throw(format);
        auto cfg = load_scenario(scenario);
        if (seed) cfg.seed = *seed;

        if (run->parsed()) {
            if (!policy.empty()) cfg.policy = policy_or_throw(policy);
            Engine engine(cfg);
            const auto report = engine.run();
            emit(render(report, fmt), output, out);
            if (!plot.empty()) write_file(plot, render_svg(report));
            if (!actions.empty()) write_file(actions, render_actions(engine.colony().log()));
            return kExitOk;
        }

        if (policies.size() < 2) throw UsageError("compare needs at least two policies");
        std::vector<MetricsReport> reports;
        for (const auto& name : policies) {
            auto c = cfg;
            c.policy = policy_or_throw(name);
            reports.push_back(antcloud::run(c));
        }
        std::string text;
        for (std::size_t i = 1; i < reports.size(); ++i) {
            if (i > 1) text += "\n";
            text += render(compare(reports[0], reports[i]), fmt);
        }
        emit(text, output, out);
        return kExitOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

} // namespace antcloud
