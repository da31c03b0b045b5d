#pragma once

#include "linkdyn/params.hpp"
#include "linkdyn/rng.hpp"
#include "linkdyn/sample_path.hpp"

#include <cstddef>
#include <span>

namespace linkdyn::sim {

/// Substream ids hung off one master seed; distinct processes never share a
/// stream.
namespace streams {
inline constexpr std::uint64_t node1_x = 0;
inline constexpr std::uint64_t node1_y = 1;
inline constexpr std::uint64_t node2_x = 2;
inline constexpr std::uint64_t node2_y = 3;
inline constexpr std::uint64_t fading = 4;
inline constexpr std::uint64_t gain_iid = 5;
inline constexpr std::uint64_t euler_z = 6;
inline constexpr std::uint64_t euler_snr = 7;
inline constexpr std::uint64_t figure_base = 100; ///< + 16 per verification job
} // namespace streams

struct EulerControl {
    enum class Scheme { full_truncation };
    double dt = 0.0;
    Scheme scheme = Scheme::full_truncation;
};

/// One exact conditional-Gaussian OU step; distributionally exact for any dt.
double ou_step_exact(double s, double dt, const MobilityParams& m, Philox4x32& rng);

struct PairInit {
    enum class Kind { stationary, fixed };
    Kind kind = Kind::stationary;
    double x1 = 0.0, y1 = 0.0, x2 = 0.0, y2 = 0.0;

    static PairInit stationary() { return PairInit{}; }
    static PairInit fixed(double x1_, double y1_, double x2_, double y2_) {
        return PairInit{Kind::fixed, x1_, y1_, x2_, y2_};
    }
};

struct PairPaths {
    SamplePath x1, y1, x2, y2; ///< node coordinate trajectories
    SamplePath z;              ///< squared separation
    SamplePath r;              ///< separation
};

/// Two nodes, four independent exactly-stepped OU coordinates. The squared
/// separation inherits the exact noncentral chi-square transition law, so
/// this doubles as the reference sampler for the distance SDE. The four
/// coordinates draw from substreams stream_base + 0..3 of the seed.
PairPaths simulate_pair_2d(const MobilityParams& m, double dt, std::size_t n_steps,
                           const PairInit& init, std::uint64_t seed,
                           std::uint64_t stream_base = streams::node1_x);

/// One exact draw of the squared separation after a positive lag,
/// conditional on its current value: the squared sum of two conditional
/// Gaussian difference coordinates (rotation invariance makes the
/// decomposition of z_t irrelevant).
double z_transition_sample_exact(double z_t, double lag, const MobilityParams& m, Philox4x32& rng);

/// One draw from the stationary squared-separation law via the coordinate
/// route (difference coordinates are N(0, D tau) each).
double z_stationary_sample(const MobilityParams& m, Philox4x32& rng);

/// Full-truncation Euler for dZ = k(theta - Z)dt + sigma sqrt(Z) dW.
SamplePath euler_z_path(double z0, const CirParams& cir, const EulerControl& ctl,
                        std::size_t n_steps, Philox4x32& rng);
SamplePath euler_z_path(double z0, const CirParams& cir, const EulerControl& ctl,
                        std::span<const double> noise);

/// Euler for the SNR SDE. Iterates are floored at machine epsilon (clamp
/// counted) and capped at 1e12 (cap counted): the drift is superlinear for
/// every eta, so rare runaways must not overflow to inf.
SamplePath euler_snr_path(double n0, const CirParams& cir, const PathLossParams& pl,
                          const EulerControl& ctl, std::size_t n_steps, Philox4x32& rng);
SamplePath euler_snr_path(double n0, const CirParams& cir, const PathLossParams& pl,
                          const EulerControl& ctl, std::span<const double> noise);

} // namespace linkdyn::sim
