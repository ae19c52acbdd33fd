// CLI front end. Kept as a library function so tests can drive it without
// spawning processes; tools/metric_forge.cpp is a thin wrapper.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mforge {

// Exit codes: 0 success, 1 input/parse error, 2 premise failure (witness
// emitted), 3 verification failure, 4 oracle scale exceeded.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNoMetric = 2;
inline constexpr int kExitVerifyFailed = 3;
inline constexpr int kExitOracleScale = 4;

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mforge
