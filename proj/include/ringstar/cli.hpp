#pragma once

// Command-line front end. Loads a JSON run config, executes the requested
// mode and writes all artifacts (JSON reports, CSV tables/grids, PNG figures
// plus manifest.json and resolved_config.json) into --out.
//
// Exit codes: 0 success, 2 configuration problems (bad flags, unreadable or
// invalid config), 3 trajectory divergence, 1 anything else.

#include <cstdint>
#include <string>
#include <vector>

#include "ringstar/config_io.hpp"

namespace ringstar {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDivergence = 3;

inline constexpr const char* kVersion = "0.1.0";

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    bool quiet = false;
    bool no_plots = false;
    int threads = 0;      // >0 overrides config; else RINGSTAR_THREADS, else config
    bool has_seed = false;
    std::uint64_t seed = 0; // overrides network seed when has_seed
    bool write_trajectory = false;
};

// argv-style entry point used by main(); never throws.
int run_cli(int argc, const char* const* argv);

// Convenience wrapper for in-process tests; args exclude the program name.
int run_cli(const std::vector<std::string>& args);

} // namespace ringstar
