#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace onebit::cli {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Full command dispatcher (solve-one, ber-sweep, user-sweep, time-bench,
/// validate). Returns the process exit code: 0 success, 1 runtime/check
/// failure, 2 usage error.
int run_cli(int argc, const char* const* argv);

struct SuiteResult {
    std::string name;
    int checked = 0;
    int failed = 0;
    std::string detail;  // first failure, with reproduction seed
};

/// The built-in oracle/property suites behind the `validate` subcommand.
std::vector<SuiteResult> validation_suites(std::uint64_t seed);

}  // namespace onebit::cli
