#include "linkdyn/procsim.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace linkdyn::sim {

namespace {

constexpr double kSnrFloor = std::numeric_limits<double>::epsilon();
constexpr double kSnrCap = 1e12;

void finalize_clamp_warning(SamplePath& path, std::size_t n_steps) {
    path.diagnostics.clamp_warning =
        n_steps > 0 && static_cast<double>(path.diagnostics.clamp_count) >= 1e-3 * static_cast<double>(n_steps);
}

} // namespace

double ou_step_exact(double s, double dt, const MobilityParams& m, Philox4x32& rng) {
    if (!(dt > 0.0)) throw std::domain_error("ou_step_exact: dt must be > 0");
    const double decay = std::exp(-dt / m.tau);
    const double sd = std::sqrt(0.5 * m.diffusion * m.tau * (-std::expm1(-2.0 * dt / m.tau)));
    return m.mu + (s - m.mu) * decay + sd * rng.next_normal();
}

PairPaths simulate_pair_2d(const MobilityParams& m, double dt, std::size_t n_steps,
                           const PairInit& init, std::uint64_t seed, std::uint64_t stream_base) {
    if (!(dt > 0.0)) throw std::domain_error("simulate_pair_2d: dt must be > 0");
    if (n_steps < 1) throw std::invalid_argument("simulate_pair_2d: n_steps must be >= 1");

    Philox4x32 rng_x1(seed, stream_base + 0), rng_y1(seed, stream_base + 1);
    Philox4x32 rng_x2(seed, stream_base + 2), rng_y2(seed, stream_base + 3);

    PairPaths out;
    for (SamplePath* p : {&out.x1, &out.y1, &out.x2, &out.y2}) {
        p->dt = dt;
        p->seed = seed;
        p->kind = PathKind::position2d;
        p->values.reserve(n_steps + 1);
    }
    out.z = SamplePath{dt, seed, PathKind::squared_distance, {}, {}};
    out.r = SamplePath{dt, seed, PathKind::distance, {}, {}};
    out.z.values.reserve(n_steps + 1);
    out.r.values.reserve(n_steps + 1);

    double x1, y1, x2, y2;
    if (init.kind == PairInit::Kind::stationary) {
        const double sd = std::sqrt(0.5 * m.diffusion * m.tau);
        x1 = m.mu + sd * rng_x1.next_normal();
        y1 = m.mu + sd * rng_y1.next_normal();
        x2 = m.mu + sd * rng_x2.next_normal();
        y2 = m.mu + sd * rng_y2.next_normal();
    } else {
        x1 = init.x1;
        y1 = init.y1;
        x2 = init.x2;
        y2 = init.y2;
    }

    auto record = [&out](double ax1, double ay1, double ax2, double ay2) {
        out.x1.values.push_back(ax1);
        out.y1.values.push_back(ay1);
        out.x2.values.push_back(ax2);
        out.y2.values.push_back(ay2);
        const double dx = ax2 - ax1, dy = ay2 - ay1;
        const double z = dx * dx + dy * dy;
        out.z.values.push_back(z);
        out.r.values.push_back(std::sqrt(z));
    };
    record(x1, y1, x2, y2);
    for (std::size_t i = 0; i < n_steps; ++i) {
        x1 = ou_step_exact(x1, dt, m, rng_x1);
        y1 = ou_step_exact(y1, dt, m, rng_y1);
        x2 = ou_step_exact(x2, dt, m, rng_x2);
        y2 = ou_step_exact(y2, dt, m, rng_y2);
        record(x1, y1, x2, y2);
    }
    return out;
}

double z_transition_sample_exact(double z_t, double lag, const MobilityParams& m, Philox4x32& rng) {
    if (!(z_t >= 0.0)) throw std::domain_error("z_transition_sample_exact: z_t must be >= 0");
    if (!(lag > 0.0)) throw std::domain_error("z_transition_sample_exact: lag must be > 0");
    const double decay = std::exp(-lag / m.tau);
    // per-axis difference-coordinate conditional variance
    const double sd = std::sqrt(m.diffusion * m.tau * (-std::expm1(-2.0 * lag / m.tau)));
    const double xs = decay * std::sqrt(z_t) + sd * rng.next_normal();
    const double ys = sd * rng.next_normal();
    return xs * xs + ys * ys;
}

double z_stationary_sample(const MobilityParams& m, Philox4x32& rng) {
    const double sd = std::sqrt(m.diffusion * m.tau);
    const double x = sd * rng.next_normal();
    const double y = sd * rng.next_normal();
    return x * x + y * y;
}

namespace {

template <typename NextNormal>
SamplePath euler_z_impl(double z0, const CirParams& cir, const EulerControl& ctl,
                        std::size_t n_steps, NextNormal&& next_normal, std::uint64_t seed) {
    if (!(ctl.dt > 0.0)) throw std::domain_error("euler_z_path: dt must be > 0");
    if (!(z0 >= 0.0)) throw std::domain_error("euler_z_path: z0 must be >= 0");
    SamplePath path{ctl.dt, seed, PathKind::squared_distance, {}, {}};
    path.values.reserve(n_steps + 1);
    const double sqrt_dt = std::sqrt(ctl.dt);
    double z = z0;
    path.values.push_back(z);
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double zp = z > 0.0 ? z : 0.0;
        double next = z + cir.k * (cir.theta - zp) * ctl.dt + cir.sigma * std::sqrt(zp) * sqrt_dt * next_normal();
        if (next < 0.0) {
            next = 0.0;
            ++path.diagnostics.clamp_count;
        }
        z = next;
        path.values.push_back(z);
    }
    finalize_clamp_warning(path, n_steps);
    return path;
}

template <typename NextNormal>
SamplePath euler_snr_impl(double n0, const CirParams& cir, const PathLossParams& pl,
                          const EulerControl& ctl, std::size_t n_steps, NextNormal&& next_normal,
                          std::uint64_t seed) {
    if (!(ctl.dt > 0.0)) throw std::domain_error("euler_snr_path: dt must be > 0");
    if (!(n0 > 0.0)) throw std::domain_error("euler_snr_path: n0 must be > 0");
    const double eta = pl.eta();
    const double h = 0.5 * eta;
    const double psi = pl.psi();
    const double drift_linear = cir.k * h;
    const double drift_power = -cir.k * cir.theta * h + 0.5 * cir.sigma * cir.sigma * h * (1.0 + h);
    const double diff_coef = -cir.sigma * h;
    const double inv_eta = 1.0 / eta;
    const bool eta_is_two = pl.p() == 2 && pl.q() == 1;

    SamplePath path{ctl.dt, seed, PathKind::snr, {}, {}};
    path.values.reserve(n_steps + 1);
    const double sqrt_dt = std::sqrt(ctl.dt);
    double n = n0;
    path.values.push_back(n);
    for (std::size_t i = 0; i < n_steps; ++i) {
        // the SDE is stated for psi = 1; N = psi M scales drift/diffusion as
        // psi * (coef at N/psi). m^{1+2/eta} = m t^2 and m^{1+1/eta} = m t
        // with t = m^{1/eta}.
        const double m = n / psi;
        const double t = eta_is_two ? std::sqrt(m) : std::pow(m, inv_eta);
        const double drift = psi * (drift_linear * m + drift_power * (m * t * t));
        const double diffusion = psi * diff_coef * (m * t);
        double next = n + drift * ctl.dt + diffusion * sqrt_dt * next_normal();
        if (next <= 0.0 || !std::isfinite(next)) {
            next = next <= 0.0 ? kSnrFloor : kSnrCap;
            if (next == kSnrFloor) {
                ++path.diagnostics.clamp_count;
            } else {
                ++path.diagnostics.cap_count;
            }
        } else if (next > kSnrCap) {
            next = kSnrCap;
            ++path.diagnostics.cap_count;
        }
        n = next;
        path.values.push_back(n);
    }
    finalize_clamp_warning(path, n_steps);
    return path;
}

} // namespace

SamplePath euler_z_path(double z0, const CirParams& cir, const EulerControl& ctl,
                        std::size_t n_steps, Philox4x32& rng) {
    return euler_z_impl(z0, cir, ctl, n_steps, [&rng] { return rng.next_normal(); }, 0);
}

SamplePath euler_z_path(double z0, const CirParams& cir, const EulerControl& ctl,
                        std::span<const double> noise) {
    std::size_t i = 0;
    return euler_z_impl(z0, cir, ctl, noise.size(), [&noise, &i] { return noise[i++]; }, 0);
}

SamplePath euler_snr_path(double n0, const CirParams& cir, const PathLossParams& pl,
                          const EulerControl& ctl, std::size_t n_steps, Philox4x32& rng) {
    return euler_snr_impl(n0, cir, pl, ctl, n_steps, [&rng] { return rng.next_normal(); }, 0);
}

SamplePath euler_snr_path(double n0, const CirParams& cir, const PathLossParams& pl,
                          const EulerControl& ctl, std::span<const double> noise) {
    std::size_t i = 0;
    return euler_snr_impl(n0, cir, pl, ctl, noise.size(), [&noise, &i] { return noise[i++]; }, 0);
}

} // namespace linkdyn::sim
