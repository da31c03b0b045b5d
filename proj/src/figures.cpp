#include "linkdyn/figures.hpp"

#include "linkdyn/fading.hpp"
#include "linkdyn/procsim.hpp"
#include "linkdyn/special_functions.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>

namespace linkdyn::verify {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::size_t scaled(double base, double scale, std::size_t floor_n) {
    const double n = base * scale;
    return std::max(floor_n, static_cast<std::size_t>(n));
}

/// Analytic-side CIR parameters; theta_scale != 1 is the negative control.
CirParams analytic_cir(const MobilityParams& m, const VerifyOptions& opt) {
    const CirParams c = derive_cir(m);
    return CirParams(c.k, c.theta * opt.theta_scale, c.sigma);
}

FigureCurve histogram_vs_pdf(const std::string& name, std::span<const double> samples, int bins,
                             double lo, double hi, const std::function<double(double)>& pdf,
                             const std::string& x_label) {
    const analytic::DistributionCurve hist = empirical_pdf(samples, bins, lo, hi);
    FigureCurve curve;
    curve.name = name;
    curve.x_label = x_label;
    curve.x = hist.abscissa;
    curve.empirical = hist.values;
    curve.analytic.reserve(curve.x.size());
    for (double x : curve.x) curve.analytic.push_back(pdf(x));
    return curve;
}

// --- jobs ------------------------------------------------------------

FigureOutput job_fig3(const VerifyOptions& opt, std::uint64_t sb) {
    const auto t0 = Clock::now();
    const MobilityParams m(1.0, 100.0);
    const CirParams ana = analytic_cir(m, opt);
    const double z0 = 3000.0, lag = 0.2;
    const std::size_t n = scaled(1e5, opt.sample_scale, 2000);
    Philox4x32 rng(opt.seed, sb);
    std::vector<double> z(n);
    for (double& v : z) v = sim::z_transition_sample_exact(z0, lag, m, rng);
    const double hi = sample_quantile(z, 0.999);
    auto pdf = [&](double x) { return analytic::z_transition_pdf(x, z0, lag, ana); };
    const double l1 = l1_histogram_distance(z, bin_mass_from_pdf(pdf), 100, 0.0, hi);

    FigureOutput out;
    out.report = {"fig3-z-transition", StatKind::l1_histogram, l1, opt.l1_threshold,
                  PassDirection::value_leq_threshold, false, n, opt.seed, seconds_since(t0),
                  "conditional squared-distance law at lag 0.2 s from z0=3000"};
    out.report.finalize();
    out.curves.push_back(histogram_vs_pdf("fig3_z_transition", z, 100, 0.0, hi, pdf, "z_m2"));
    return out;
}

FigureOutput job_fig4(const VerifyOptions& opt, std::uint64_t sb) {
    const auto t0 = Clock::now();
    const MobilityParams m(1.0, 100.0);
    const CirParams ana = analytic_cir(m, opt);
    const double z0 = 3000.0, lag = 10.0;
    const std::size_t n = scaled(1e5, opt.sample_scale, 2000);
    Philox4x32 rng(opt.seed, sb);
    std::vector<double> z(n);
    for (double& v : z) v = sim::z_transition_sample_exact(z0, lag, m, rng);
    const double hi = sample_quantile(z, 0.999);
    // after 10 s the transition law has relaxed onto the stationary one
    auto mass = [&](double a, double b) {
        return analytic::z_stationary_cdf(b, ana) - analytic::z_stationary_cdf(a, ana);
    };
    const double l1 = l1_histogram_distance(z, mass, 100, 0.0, hi);
    auto pdf = [&](double x) { return analytic::z_transition_pdf(x, z0, lag, ana); };

    FigureOutput out;
    out.report = {"fig4-z-transition-relaxed", StatKind::l1_histogram, l1, opt.l1_threshold,
                  PassDirection::value_leq_threshold, false, n, opt.seed, seconds_since(t0),
                  "conditional squared-distance law at lag 10 s vs stationary exponential"};
    out.report.finalize();
    out.curves.push_back(histogram_vs_pdf("fig4_z_transition_10s", z, 100, 0.0, hi, pdf, "z_m2"));
    return out;
}

FigureOutput job_fig5(const VerifyOptions& opt, std::uint64_t sb) {
    const auto t0 = Clock::now();
    const MobilityParams m(1.0, 100.0);
    const CirParams ana = analytic_cir(m, opt);
    const std::size_t n = scaled(1e5, opt.sample_scale, 2000);
    Philox4x32 rng(opt.seed, sb);
    std::vector<double> z(n);
    for (double& v : z) v = sim::z_stationary_sample(m, rng);
    const KsResult ks = ks_test(z, [&](double x) { return analytic::z_stationary_cdf(x, ana); });

    FigureOutput out;
    out.report = {"fig5-z-stationary", StatKind::ks, ks.p_value, opt.ks_p_threshold,
                  PassDirection::value_geq_threshold, false, n, opt.seed, seconds_since(t0),
                  "stationary squared-distance law vs Exp(theta); D=" + std::to_string(ks.statistic)};
    out.report.finalize();
    const double hi = sample_quantile(z, 0.999);
    out.curves.push_back(histogram_vs_pdf(
        "fig5_z_stationary", z, 100, 0.0, hi,
        [&](double x) { return analytic::z_stationary_pdf(x, ana); }, "z_m2"));
    return out;
}

FigureOutput job_fig6(const VerifyOptions& opt, std::uint64_t sb) {
    const auto t0 = Clock::now();
    const MobilityParams m(0.1, 100.0);
    const CirParams ana = analytic_cir(m, opt);
    const double dt = 1e-3;
    const std::size_t n = scaled(1e6, opt.sample_scale, 20000);
    const std::size_t max_lag = static_cast<std::size_t>(std::round(0.1 / dt));
    const sim::PairPaths pair = sim::simulate_pair_2d(m, dt, n, sim::PairInit::stationary(), opt.seed, sb);
    const analytic::DistributionCurve acov = empirical_autocov(pair.z, max_lag, /*normalized=*/true);

    double max_dev = 0.0;
    FigureCurve curve;
    curve.name = "fig6_z_autocov";
    curve.x_label = "lag_s";
    for (std::size_t i = 0; i < acov.abscissa.size(); ++i) {
        const double lag = acov.abscissa[i];
        const double ref = std::exp(-ana.k * lag);
        curve.x.push_back(lag);
        curve.analytic.push_back(ref);
        curve.empirical.push_back(acov.values[i]);
        if (lag > 0.0) max_dev = std::max(max_dev, std::fabs(acov.values[i] - ref));
    }

    FigureOutput out;
    out.report = {"fig6-z-autocov", StatKind::max_abs_dev, max_dev, opt.autocov_dev_threshold,
                  PassDirection::value_leq_threshold, false, n, opt.seed, seconds_since(t0),
                  "normalized squared-distance autocovariance vs exp(-k lag), lag <= tau"};
    out.report.finalize();
    out.curves.push_back(std::move(curve));
    return out;
}

FigureOutput job_fig7(const VerifyOptions& opt, std::uint64_t sb) {
    const auto t0 = Clock::now();
    const MobilityParams m(1.0, 100.0);
    const CirParams ana = analytic_cir(m, opt);
    const double r0 = std::sqrt(3000.0), lag = 10.0;
    const std::size_t n = scaled(1e5, opt.sample_scale, 2000);
    Philox4x32 rng(opt.seed, sb);
    std::vector<double> r(n);
    for (double& v : r) v = std::sqrt(sim::z_transition_sample_exact(r0 * r0, lag, m, rng));
    const double hi = sample_quantile(r, 0.999);
    auto mass = [&](double a, double b) {
        return std::exp(-a * a / ana.theta) - std::exp(-b * b / ana.theta); // Rayleigh cdf diff
    };
    const double l1 = l1_histogram_distance(r, mass, 100, 0.0, hi);
    auto pdf = [&](double x) { return analytic::r_transition_pdf(x, r0, lag, ana); };

    FigureOutput out;
    out.report = {"fig7-r-transition", StatKind::l1_histogram, l1, opt.l1_threshold,
                  PassDirection::value_leq_threshold, false, n, opt.seed, seconds_since(t0),
                  "distance law at lag 10 s vs Rayleigh steady state"};
    out.report.finalize();
    out.curves.push_back(histogram_vs_pdf("fig7_r_transition_10s", r, 100, 0.0, hi, pdf, "r_m"));
    return out;
}

FigureOutput job_fig8(const VerifyOptions& opt, std::uint64_t sb) {
    const auto t0 = Clock::now();
    const MobilityParams m(1.0, 100.0);
    const CirParams ana = analytic_cir(m, opt);
    const PathLossParams pl(4, 1);
    const std::size_t n = scaled(1e5, opt.sample_scale, 2000);
    Philox4x32 rng(opt.seed, sb);
    std::vector<double> snr(n);
    for (double& v : snr) {
        const double z = sim::z_stationary_sample(m, rng);
        v = std::pow(z, -2.0); // psi Z^{-eta/2}, eta = 4, psi = 1
    }
    const double hi = sample_quantile(snr, 0.98);
    auto mass = [&](double a, double b) {
        const double fa = a <= 0.0 ? 0.0 : analytic::snr_cdf_nofading(a, ana, pl);
        return analytic::snr_cdf_nofading(b, ana, pl) - fa;
    };
    const double l1 = l1_histogram_distance(snr, mass, 100, 0.0, hi);
    auto pdf = [&](double x) { return x <= 0.0 ? 0.0 : analytic::snr_pdf_nofading(x, ana, pl); };

    FigureOutput out;
    out.report = {"fig8-snr-nofading-eta4", StatKind::l1_histogram, l1, opt.l1_threshold,
                  PassDirection::value_leq_threshold, false, n, opt.seed, seconds_since(t0),
                  "stationary SNR law without fading, eta=4"};
    out.report.finalize();
    out.curves.push_back(histogram_vs_pdf("fig8_snr_nofading_eta4", snr, 100, 0.0, hi, pdf, "rho"));
    return out;
}

FigureOutput job_sde_snr(const VerifyOptions& opt, std::uint64_t sb) {
    const auto t0 = Clock::now();
    const MobilityParams m(1.0, 100.0);
    const CirParams cir = derive_cir(m);
    const CirParams ana = analytic_cir(m, opt);
    const PathLossParams pl(2, 1);
    const std::size_t n_paths = scaled(1e5, opt.sample_scale, 500);
    // dt is pinned at 1e-3 tau. The drift is superlinear with positive
    // feedback (the SNR has no mean), so plain Euler runs away on rare
    // small-distance excursions and its marginal degrades with horizon;
    // 25 steps keeps the runaway fraction negligible. Coefficient errors
    // are caught by the shared-noise pathwise check, not by this marginal.
    const std::size_t n_steps = 25;
    const sim::EulerControl ctl{1e-3 * m.tau};
    Philox4x32 rng(opt.seed, sb);
    std::vector<double> terminal(n_paths);
    std::uint64_t clamps = 0, caps = 0;
    for (double& v : terminal) {
        const double z0 = cir.theta * rng.next_exponential();
        const double n0 = 1.0 / z0; // Z^{-eta/2}, eta = 2
        const sim::SamplePath path = sim::euler_snr_path(n0, cir, pl, ctl, n_steps, rng);
        clamps += path.diagnostics.clamp_count;
        caps += path.diagnostics.cap_count;
        v = path.values.back();
    }
    const double hi = sample_quantile(terminal, 0.95);
    auto mass = [&](double a, double b) {
        const double fa = a <= 0.0 ? 0.0 : analytic::snr_cdf_nofading(a, ana, pl);
        return analytic::snr_cdf_nofading(b, ana, pl) - fa;
    };
    const double l1 = l1_histogram_distance(terminal, mass, 50, 0.0, hi);
    auto pdf = [&](double x) { return x <= 0.0 ? 0.0 : analytic::snr_pdf_nofading(x, ana, pl); };

    FigureOutput out;
    out.report = {"sde-snr-euler-eta2", StatKind::l1_histogram, l1, opt.euler_l1_threshold,
                  PassDirection::value_leq_threshold, false, n_paths, opt.seed, seconds_since(t0),
                  "terminal marginal of the Euler-discretized SNR SDE, eta=2; clamps=" +
                      std::to_string(clamps) + " caps=" + std::to_string(caps)};
    out.report.finalize();
    out.curves.push_back(
        histogram_vs_pdf("sde_snr_euler_eta2", terminal, 50, 0.0, hi, pdf, "rho"));
    return out;
}

struct ThinnedGains {
    std::vector<double> values;
    std::size_t thin;
};

ThinnedGains thinned_ar_gains(const VerifyOptions& opt, std::uint64_t sb, std::size_t n_snr) {
    const fading::FadingModel model(100.0, 0.0003);
    const fading::ArFit fit = fading::fit_ar(model);
    // thin by five fading correlation times (1/(2 nu_max) heuristic)
    const std::size_t thin = static_cast<std::size_t>(
        std::ceil(5.0 / (2.0 * model.nu_max * model.dt)));
    Philox4x32 rng(opt.seed, sb);
    const sim::SamplePath g = fading::gain_path(model, fit, n_snr * thin, rng);
    ThinnedGains out;
    out.thin = thin;
    out.values.resize(n_snr);
    for (std::size_t i = 0; i < n_snr; ++i) out.values[i] = g.values[i * thin];
    return out;
}

FigureOutput job_fig9(const VerifyOptions& opt, std::uint64_t sb) {
    const auto t0 = Clock::now();
    const MobilityParams m(1.0, 100.0);
    const CirParams ana = analytic_cir(m, opt);
    const std::size_t n = scaled(1e5, opt.sample_scale, 2000);
    const ThinnedGains g = thinned_ar_gains(opt, sb, n);
    Philox4x32 rng(opt.seed, sb + 1);
    std::vector<double> snr(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = sim::z_stationary_sample(m, rng);
        snr[i] = g.values[i] / z; // psi Z^{-eta/2} G, eta = 2
    }
    const double hi = sample_quantile(snr, 0.95);
    auto mass = [&](double a, double b) {
        return analytic::snr_cdf_fading_eta2(b, ana) - analytic::snr_cdf_fading_eta2(a, ana);
    };
    const double l1 = l1_histogram_distance(snr, mass, 100, 0.0, hi);
    auto pdf = [&](double x) { return analytic::snr_pdf_fading_eta2(x, ana); };

    FigureOutput out;
    out.report = {"fig9-snr-fading-eta2", StatKind::l1_histogram, l1, opt.l1_threshold,
                  PassDirection::value_leq_threshold, false, n, opt.seed, seconds_since(t0),
                  "SNR law under AR Rayleigh fading, eta=2, nu_max=100 Hz, dt=0.3 ms, thin=" +
                      std::to_string(g.thin)};
    out.report.finalize();
    out.curves.push_back(histogram_vs_pdf("fig9_snr_fading_eta2", snr, 100, 0.0, hi, pdf, "rho"));
    return out;
}

FigureOutput job_snr_pdf_4(const VerifyOptions& opt, std::uint64_t sb) {
    const auto t0 = Clock::now();
    const MobilityParams m(1.0, 100.0);
    const CirParams ana = analytic_cir(m, opt);
    const std::size_t n = scaled(1e5, opt.sample_scale, 2000);
    const ThinnedGains g = thinned_ar_gains(opt, sb, n);
    Philox4x32 rng(opt.seed, sb + 1);
    std::vector<double> snr(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = sim::z_stationary_sample(m, rng);
        snr[i] = g.values[i] / (z * z); // eta = 4
    }
    const double hi = sample_quantile(snr, 0.95);
    auto pdf = [&](double x) { return x <= 0.0 ? 0.0 : analytic::snr_pdf_fading_eta4(x, ana); };
    // this density falls by orders of magnitude inside the first bin, so the
    // analytic masses need real quadrature
    const double l1 = l1_histogram_distance(snr, bin_mass_from_pdf_adaptive(pdf), 100, 0.0, hi);

    FigureOutput out;
    out.report = {"snr-pdf-4-fading-eta4", StatKind::l1_histogram, l1, opt.l1_threshold,
                  PassDirection::value_leq_threshold, false, n, opt.seed, seconds_since(t0),
                  "SNR law under AR Rayleigh fading, eta=4, nu_max=100 Hz, dt=0.3 ms, thin=" +
                      std::to_string(g.thin)};
    out.report.finalize();
    out.curves.push_back(histogram_vs_pdf("snr_pdf_4_fading_eta4", snr, 100, 0.0, hi, pdf, "rho"));
    return out;
}

FigureOutput job_fig10(const VerifyOptions& opt, std::uint64_t sb) {
    const auto t0 = Clock::now();
    const MobilityParams m(0.6, 4.0);
    const CirParams ana = analytic_cir(m, opt);
    const PathLossParams pl(2, 1);
    const SnrThreshold thr(db_to_linear(2.0), pl);
    const double dt = 1e-3 * m.tau;
    const std::size_t n = scaled(1e6, opt.sample_scale, 20000);
    const sim::PairPaths pair = sim::simulate_pair_2d(m, dt, n, sim::PairInit::stationary(), opt.seed, sb);

    sim::SamplePath snr{dt, opt.seed, sim::PathKind::snr, {}, {}};
    snr.values.reserve(pair.z.values.size());
    for (double z : pair.z.values) snr.values.push_back(z > 0.0 ? 1.0 / z : 1e300);
    const CrossingSummary cs = crossing_analysis(snr, thr);

    const double conn = analytic::conn_prob_nofading(thr, ana, pl);
    // indicator correlation time <= tau/2; n_eff = horizon/tau keeps a
    // factor-2 margin on top of that
    const double n_eff = snr.horizon() / m.tau;
    const double sigma = std::sqrt(conn * (1.0 - conn) / n_eff);
    const double zscore = std::fabs(cs.fraction_on - conn) / sigma;

    FigureOutput out;
    out.report = {"fig10-snr-crossings", StatKind::binomial_z, zscore, opt.crossing_sigmas,
                  PassDirection::value_leq_threshold, false, n, opt.seed, seconds_since(t0),
                  "on-fraction " + std::to_string(cs.fraction_on) + " vs connectivity " +
                      std::to_string(conn) + " (n_eff=" + std::to_string(n_eff) + ")"};
    out.report.finalize();

    FigureCurve curve;
    curve.name = "fig10_snr_path";
    curve.x_label = "t_s";
    const std::size_t keep = std::min<std::size_t>(snr.values.size(), 20000);
    for (std::size_t i = 0; i < keep; ++i) {
        curve.x.push_back(static_cast<double>(i) * dt);
        curve.analytic.push_back(thr.rho_th);
        curve.empirical.push_back(snr.values[i]);
    }
    out.curves.push_back(std::move(curve));
    return out;
}

struct JobEntry {
    const char* name;
    FigureOutput (*fn)(const VerifyOptions&, std::uint64_t);
};

constexpr JobEntry kJobs[] = {
    {"fig3-z-transition", job_fig3},
    {"fig4-z-transition-relaxed", job_fig4},
    {"fig5-z-stationary", job_fig5},
    {"fig6-z-autocov", job_fig6},
    {"fig7-r-transition", job_fig7},
    {"fig8-snr-nofading-eta4", job_fig8},
    {"sde-snr-euler-eta2", job_sde_snr},
    {"fig9-snr-fading-eta2", job_fig9},
    {"snr-pdf-4-fading-eta4", job_snr_pdf_4},
    {"fig10-snr-crossings", job_fig10},
};

} // namespace

std::vector<std::string> figure_names() {
    std::vector<std::string> names;
    for (const JobEntry& j : kJobs) names.emplace_back(j.name);
    return names;
}

std::vector<FigureOutput> figure_suite(const VerifyOptions& opt) {
    std::vector<const JobEntry*> selected;
    for (const JobEntry& j : kJobs) {
        if (opt.only.empty() || std::string(j.name).find(opt.only) != std::string::npos) {
            selected.push_back(&j);
        }
    }
    std::vector<FigureOutput> results;
    results.reserve(selected.size());
    if (opt.parallel && selected.size() > 1) {
        std::vector<std::future<FigureOutput>> futures;
        futures.reserve(selected.size());
        for (std::size_t i = 0; i < selected.size(); ++i) {
            const std::uint64_t sb = sim::streams::figure_base + 16 * (selected[i] - &kJobs[0]);
            futures.push_back(std::async(std::launch::async, selected[i]->fn, opt, sb));
        }
        for (auto& f : futures) results.push_back(f.get());
    } else {
        for (const JobEntry* j : selected) {
            const std::uint64_t sb = sim::streams::figure_base + 16 * (j - &kJobs[0]);
            results.push_back(j->fn(opt, sb));
        }
    }
    return results;
}

} // namespace linkdyn::verify
