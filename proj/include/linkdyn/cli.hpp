#pragma once

#include "linkdyn/config.hpp"

namespace linkdyn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Evaluates one analytic curve on a grid and writes it as CSV.
int cmd_dist(const RunConfig& cfg);

/// Simulates a sample path (mobility, distance SDE, SNR SDE, fading) and
/// writes path CSVs plus a metadata JSON.
int cmd_simulate(const RunConfig& cfg);

/// Runs the figure suite (or a filtered subset), writes curves and reports,
/// prints one pass/fail line per job. Returns kExitVerifyFailed if any fail.
int cmd_verify(const RunConfig& cfg);

/// Level-crossing analysis of a stationary no-fading SNR path.
int cmd_crossings(const RunConfig& cfg);

/// Runs a subcommand, mapping exceptions onto the exit-code contract
/// (2 usage/validation, 3 numerical).
int dispatch(const std::string& command, const RunConfig& cfg);

} // namespace linkdyn::cli
