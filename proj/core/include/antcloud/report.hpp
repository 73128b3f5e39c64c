#pragma once

#include <antcloud/actions.hpp>
#include <antcloud/metrics.hpp>

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace antcloud {

enum class ReportFormat : std::uint8_t { Text, Csv, Json };

/// Accepts "text", "csv", "json".
std::optional<ReportFormat> parse_format(std::string_view s);

/// Field order is fixed and numbers use their shortest round-trip form, so
/// equal reports render to equal bytes.
std::string render(const MetricsReport& report, ReportFormat format);
std::string render(const ComparisonSummary& summary, ReportFormat format);

/// Active-node count and fleet power over time as a standalone SVG.
std::string render_svg(const MetricsReport& report);

/// One canonical line per action.
std::string render_actions(std::span<const TimedAction> log);

/// Throws IoError when the file cannot be written.
void write_file(const std::filesystem::path& path, std::string_view content);

} // namespace antcloud
