#pragma once

#include <filesystem>
#include <vector>

#include "rkrcli/options.hpp"

namespace rkrcli {

// Exit codes: distinct classes so scripts can tell failures apart.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;      // unclassified
inline constexpr int kExitUsage = 2;      // bad flags / invalid arguments
inline constexpr int kExitIo = 3;         // missing or unwritable files
inline constexpr int kExitParse = 4;      // CSV / JSON ingestion
inline constexpr int kExitNumerical = 5;  // solver failures

// Each command writes its data files plus a manifest.json into cfg.out and
// returns every path written. Outputs are deterministic for a fixed config.
std::vector<std::filesystem::path> cmd_weights(const WeightsCmd& cfg);
std::vector<std::filesystem::path> cmd_synthetic(const SyntheticCmd& cfg);
std::vector<std::filesystem::path> cmd_benchmark(const BenchmarkCmd& cfg);
std::vector<std::filesystem::path> cmd_sensitivity(const SensitivityCmd& cfg);

/// Full command-line entry point (subcommand parsing, config-file merge,
/// exception-to-exit-code mapping).
int run_cli(int argc, const char* const* argv);

}  // namespace rkrcli
