#pragma once

#include <iosfwd>

namespace hypcon::cli {

/// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable overriding the configured sampling seed.
inline constexpr const char* kSeedEnv = "HYPCON_SEED";

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hypcon::cli
