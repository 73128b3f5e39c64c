#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace antcloud {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `antcloud` tool. `args` excludes the program name.
///
///   run <scenario> [--format text|csv|json] [--output F] [--seed N]
///                  [--policy P] [--plot F.svg] [--actions F]
///   compare <scenario> --policies a,b[,...] [--format ...] [--output F] [--seed N]
///   validate <scenario>
///   trace-check <trace.csv>
///
/// Returns 0 on success, 1 for configuration or runtime errors and 2 for
/// usage errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace antcloud
