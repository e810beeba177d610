#pragma once

#include <ostream>

namespace fog::cli {

// Exit codes of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitRuntime = 4;

// Entry point of the fogsim tool: run, compare, ne-experiment, list-scenarios.
// FOGSIM_OUT_DIR and FOGSIM_WORKERS supply defaults for --out and --workers.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fog::cli
