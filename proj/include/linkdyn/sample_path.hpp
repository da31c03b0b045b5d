#pragma once

#include <cstdint>
#include <vector>

namespace linkdyn::sim {

enum class PathKind { ou_coord, position2d, squared_distance, distance, snr, gain };

/// Counters filled in by the Euler integrators.
struct PathDiagnostics {
    std::uint64_t clamp_count = 0; ///< negative excursions clamped to the floor
    std::uint64_t cap_count = 0;   ///< upper-guard hits (SNR Euler only)
    bool clamp_warning = false;    ///< clamp ratio exceeded 1e-3
};

/// A time-indexed sample path with fixed step and seed provenance.
/// values[0] is the initial condition, so a path of n steps has n+1 values.
struct SamplePath {
    double dt = 0.0;
    std::uint64_t seed = 0;
    PathKind kind = PathKind::ou_coord;
    std::vector<double> values;
    PathDiagnostics diagnostics;

    double horizon() const { return dt * static_cast<double>(values.size()); }
};

} // namespace linkdyn::sim
