#pragma once

// Scenario files: a JSON document describing the fleet, the workload, the
// policy under test, tunables, faults and late node joins.

#include <antcloud/domain.hpp>
#include <antcloud/tunables.hpp>
#include <antcloud/workload.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace antcloud {

enum class Policy : std::uint8_t { Ant, RoundRobin, FirstFit };

std::string_view to_string(Policy p);
/// Accepts "ant", "round_robin", "first_fit".
std::optional<Policy> parse_policy(std::string_view s);

enum class TopologyKind : std::uint8_t { Ring, Full, Explicit };

std::string_view to_string(TopologyKind k);

struct NodeSpec {
    std::string name;
    double cpu = 0.0;
    double mem = 0.0;
    PowerProfile power;
    std::vector<std::uint32_t> neighbors; // explicit topology only, by node index

    friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

struct RequestSpec {
    SimTime arrival = 0.0;
    double rtime = 1.0;
    double thput = 0.8;
    SimTime lease = 30 * kSecondsPerDay;
    std::string app;
    std::string os = "linux";
    WorkloadSpec workload;

    friend bool operator==(const RequestSpec&, const RequestSpec&) = default;
};

/// Node crash at `at`; the node goes silent and the cleaner must notice.
struct FaultSpec {
    std::uint32_t node = 0;
    SimTime at = 0.0;

    friend bool operator==(const FaultSpec&, const FaultSpec&) = default;
};

/// A machine asking to join at `at`. With a contact node the request waits
/// for a scout there; without one the controller registers it directly.
struct JoinSpec {
    SimTime at = 0.0;
    std::string key;
    std::optional<std::uint32_t> contact;
    NodeSpec node;

    friend bool operator==(const JoinSpec&, const JoinSpec&) = default;
};

struct ScenarioConfig {
    std::uint64_t seed = 1;
    SimTime horizon = 3600.0;
    Policy policy = Policy::Ant;
    Tunables tunables;
    TopologyKind topology = TopologyKind::Ring;
    std::vector<NodeSpec> nodes;
    std::vector<RequestSpec> requests;
    std::string trace_file;
    TraceSet traces; // loaded from trace_file
    std::vector<FaultSpec> faults;
    std::vector<JoinSpec> joins;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Symmetric neighbour lists by node index for the configured topology.
std::vector<std::vector<std::uint32_t>> adjacency(const ScenarioConfig& cfg);

/// Semantic checks; throws ConfigError naming the offending field.
void validate(const ScenarioConfig& cfg);

/// Parses and validates a scenario document. A relative trace_file is
/// resolved against `base_dir`. Throws ConfigError (syntax errors carry
/// line and column) or IoError.
ScenarioConfig parse_scenario(std::string_view text, const std::filesystem::path& base_dir = {});
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Canonical document: every field written, defaults included, fixed key
/// order. parse_scenario(to_json(c)) == c.
std::string to_json(const ScenarioConfig& cfg);

/// FNV-1a of the canonical document with the seed left out, as 16 hex digits.
std::string config_hash(const ScenarioConfig& cfg);

} // namespace antcloud
