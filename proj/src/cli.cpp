#include "linkdyn/cli.hpp"

#include "linkdyn/analytic.hpp"
#include "linkdyn/fading.hpp"
#include "linkdyn/figures.hpp"
#include "linkdyn/io.hpp"
#include "linkdyn/procsim.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>

namespace linkdyn::cli {

namespace {

namespace fs = std::filesystem;

std::vector<double> build_grid(const GridSpec& g) {
    if (g.points < 2) throw std::invalid_argument("grid: need at least 2 points");
    if (!(g.min < g.max)) throw std::invalid_argument("grid: need min < max");
    if (g.log_scale && !(g.min > 0.0)) throw std::invalid_argument("grid: log scale needs min > 0");
    std::vector<double> x(g.points);
    if (g.log_scale) {
        const double l0 = std::log(g.min), l1 = std::log(g.max);
        for (int i = 0; i < g.points; ++i) {
            x[i] = std::exp(l0 + (l1 - l0) * i / (g.points - 1));
        }
    } else {
        for (int i = 0; i < g.points; ++i) {
            x[i] = g.min + (g.max - g.min) * i / (g.points - 1);
        }
    }
    return x;
}

fs::path prepare_out_dir(const RunConfig& cfg) {
    const fs::path dir = cfg.resolved_out_dir();
    fs::create_directories(dir);
    return dir;
}

} // namespace

int cmd_dist(const RunConfig& cfg) {
    if (cfg.curve.empty()) throw std::invalid_argument("dist: --curve is required");
    const MobilityParams m = cfg.mobility();
    const CirParams cir = derive_cir(m);
    const PathLossParams pl = cfg.path_loss();
    const std::vector<double> x = build_grid(cfg.grid);

    std::function<double(double)> eval;
    analytic::CurveKind kind = analytic::CurveKind::pdf;
    const std::string& c = cfg.curve;
    if (c == "z-stationary-pdf") {
        eval = [&](double z) { return analytic::z_stationary_pdf(z, cir); };
    } else if (c == "z-stationary-cdf") {
        kind = analytic::CurveKind::cdf;
        eval = [&](double z) { return analytic::z_stationary_cdf(z, cir); };
    } else if (c == "z-transition" || c == "z-transition-pdf") {
        eval = [&](double z) { return analytic::z_transition_pdf(z, cfg.z0, cfg.lag, cir); };
    } else if (c == "z-autocov") {
        eval = [&](double lag) { return analytic::z_autocov(lag, cir); };
    } else if (c == "ou-autocov") {
        eval = [&](double lag) { return analytic::ou_autocov(lag, m); };
    } else if (c == "r-stationary-pdf") {
        eval = [&](double r) { return analytic::r_stationary_pdf(r, cir); };
    } else if (c == "r-transition" || c == "r-transition-pdf") {
        eval = [&](double r) { return analytic::r_transition_pdf(r, cfg.r_cond, cfg.lag, cir); };
    } else if (c == "snr-pdf-nofading") {
        eval = [&](double rho) { return analytic::snr_pdf_nofading(rho, cir, pl); };
    } else if (c == "snr-cdf-nofading") {
        kind = analytic::CurveKind::cdf;
        eval = [&](double rho) { return analytic::snr_cdf_nofading(rho, cir, pl); };
    } else if (c == "snr-pdf-fading") {
        eval = [&](double rho) { return analytic::snr_pdf_fading(rho, cir, pl); };
    } else if (c == "snr-pdf-fading-eta2") {
        eval = [&](double rho) { return analytic::snr_pdf_fading_eta2(rho, cir, cfg.psi); };
    } else if (c == "snr-cdf-fading-eta2") {
        kind = analytic::CurveKind::cdf;
        eval = [&](double rho) { return analytic::snr_cdf_fading_eta2(rho, cir, cfg.psi); };
    } else if (c == "snr-pdf-fading-eta4") {
        eval = [&](double rho) { return analytic::snr_pdf_fading_eta4(rho, cir, cfg.psi); };
    } else if (c == "snr-bivariate-cdf") {
        if (!(cfg.rho_t > 0.0)) throw std::invalid_argument("dist: --rho-t required for bivariate curves");
        kind = analytic::CurveKind::cdf;
        eval = [&](double rho) {
            return analytic::snr_bivariate_cdf(rho, cfg.rho_t, cfg.lag, cir, pl).value;
        };
    } else if (c == "snr-bivariate-pdf") {
        if (!(cfg.rho_t > 0.0)) throw std::invalid_argument("dist: --rho-t required for bivariate curves");
        eval = [&](double rho) {
            return analytic::snr_bivariate_pdf(rho, cfg.rho_t, cfg.lag, cir, pl).value;
        };
    } else {
        throw std::invalid_argument("dist: unknown curve '" + c + "'");
    }

    analytic::DistributionCurve curve;
    curve.kind = kind;
    curve.source = c;
    curve.abscissa = x;
    curve.values.reserve(x.size());
    for (double xi : x) curve.values.push_back(eval(xi));
    curve.validate();

    nlohmann::json meta = config_json(cfg, "dist");
    meta["curve"] = c;
    meta["lag"] = cfg.lag;
    meta["z0"] = cfg.z0;
    meta["r_cond"] = cfg.r_cond;
    meta["rho_t"] = cfg.rho_t;
    meta["grid"] = {{"min", cfg.grid.min}, {"max", cfg.grid.max}, {"points", cfg.grid.points},
                    {"log", cfg.grid.log_scale}};

    const fs::path dir = prepare_out_dir(cfg);
    std::string stem = c;
    for (char& ch : stem) {
        if (ch == '-') ch = '_';
    }
    const fs::path file = dir / (stem + ".csv");
    io::write_csv(file, meta, {"x", "value"}, {&curve.abscissa, &curve.values});
    std::cout << "wrote " << file.string() << "\n";
    return kExitOk;
}

int cmd_simulate(const RunConfig& cfg) {
    const MobilityParams m = cfg.mobility();
    const CirParams cir = derive_cir(m);
    const PathLossParams pl = cfg.path_loss();
    const double dt = cfg.resolved_dt();
    const auto n_steps = static_cast<std::size_t>(std::ceil(cfg.horizon / dt));
    if (n_steps < 1) throw std::invalid_argument("simulate: horizon shorter than one step");
    const fs::path dir = prepare_out_dir(cfg);
    nlohmann::json meta = config_json(cfg, "simulate");
    meta["process"] = cfg.process;
    meta["init"] = cfg.init;
    meta["n_steps"] = n_steps;

    const bool stationary = cfg.init == "stationary";
    if (!stationary && cfg.init != "fixed") {
        throw std::invalid_argument("simulate: --init must be 'stationary' or 'fixed'");
    }

    std::vector<fs::path> written;
    if (cfg.process == "ou") {
        Philox4x32 rng(cfg.seed, sim::streams::node1_x);
        sim::SamplePath path{dt, cfg.seed, sim::PathKind::ou_coord, {}, {}};
        double s = stationary ? m.mu + std::sqrt(0.5 * m.diffusion * m.tau) * rng.next_normal() : cfg.x1;
        path.values.push_back(s);
        for (std::size_t i = 0; i < n_steps; ++i) {
            s = sim::ou_step_exact(s, dt, m, rng);
            path.values.push_back(s);
        }
        written.push_back(dir / "ou_coord.csv");
        io::write_path_csv(written.back(), meta, path, "s");
    } else if (cfg.process == "pair2d") {
        const sim::PairInit init = stationary
                                       ? sim::PairInit::stationary()
                                       : sim::PairInit::fixed(cfg.x1, cfg.y1, cfg.x2, cfg.y2);
        const sim::PairPaths pair = sim::simulate_pair_2d(m, dt, n_steps, init, cfg.seed);
        std::vector<double> t(pair.z.values.size());
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i) * dt;
        written.push_back(dir / "positions.csv");
        io::write_csv(written.back(), meta, {"t", "x1", "y1", "x2", "y2"},
                      {&t, &pair.x1.values, &pair.y1.values, &pair.x2.values, &pair.y2.values});
        written.push_back(dir / "squared_distance.csv");
        io::write_path_csv(written.back(), meta, pair.z, "z");
        written.push_back(dir / "distance.csv");
        io::write_path_csv(written.back(), meta, pair.r, "r");
    } else if (cfg.process == "z-euler") {
        Philox4x32 rng(cfg.seed, sim::streams::euler_z);
        const double z0 = stationary ? cir.theta * rng.next_exponential() : cfg.z0;
        const sim::SamplePath path = sim::euler_z_path(z0, cir, {dt}, n_steps, rng);
        meta["clamp_count"] = path.diagnostics.clamp_count;
        if (path.diagnostics.clamp_warning) {
            std::cerr << "warning: Euler clamp ratio exceeded 1e-3; consider a smaller dt\n";
        }
        written.push_back(dir / "z_euler.csv");
        io::write_path_csv(written.back(), meta, path, "z");
    } else if (cfg.process == "snr-euler") {
        Philox4x32 rng(cfg.seed, sim::streams::euler_snr);
        const double z0 = stationary ? cir.theta * rng.next_exponential() : cfg.z0;
        const double n0 = cfg.psi * std::pow(z0, -0.5 * pl.eta());
        const sim::SamplePath path = sim::euler_snr_path(n0, cir, pl, {dt}, n_steps, rng);
        meta["clamp_count"] = path.diagnostics.clamp_count;
        meta["cap_count"] = path.diagnostics.cap_count;
        written.push_back(dir / "snr_euler.csv");
        io::write_path_csv(written.back(), meta, path, "snr");
    } else if (cfg.process == "gain") {
        const fading::FadingModel model(cfg.nu_max, dt, cfg.ar_order, cfg.bias_eps);
        if (model.nyquist_warning()) {
            std::cerr << "warning: 2 nu_max dt >= 1; the Doppler spectrum is undersampled\n";
        }
        const fading::ArFit fit = fading::fit_ar(model);
        Philox4x32 rng(cfg.seed, sim::streams::fading);
        sim::SamplePath path = fading::gain_path(model, fit, n_steps, rng);
        path.seed = cfg.seed;
        written.push_back(dir / "gain.csv");
        io::write_path_csv(written.back(), meta, path, "g");
    } else if (cfg.process == "gain-iid") {
        Philox4x32 rng(cfg.seed, sim::streams::gain_iid);
        const std::vector<double> g = fading::gain_iid(cfg.samples, rng);
        std::vector<double> idx(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) idx[i] = static_cast<double>(i);
        written.push_back(dir / "gain_iid.csv");
        io::write_csv(written.back(), meta, {"i", "g"}, {&idx, &g});
    } else {
        throw std::invalid_argument("simulate: unknown process '" + cfg.process + "'");
    }
    io::write_json(dir / "metadata.json", meta);
    for (const fs::path& p : written) std::cout << "wrote " << p.string() << "\n";
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
    verify::VerifyOptions opt;
    opt.seed = cfg.seed;
    opt.theta_scale = cfg.theta_scale;
    opt.sample_scale = cfg.sample_scale;
    opt.only = cfg.only;
    opt.parallel = !cfg.sequential;

    const std::vector<verify::FigureOutput> results = verify::figure_suite(opt);
    if (results.empty()) throw std::invalid_argument("verify: no job matches '" + cfg.only + "'");

    const fs::path dir = prepare_out_dir(cfg);
    nlohmann::json reports = nlohmann::json::array();
    bool all_pass = true;
    for (const verify::FigureOutput& fig : results) {
        reports.push_back(io::to_json(fig.report));
        all_pass = all_pass && fig.report.pass;
        for (const verify::FigureCurve& curve : fig.curves) {
            nlohmann::json meta = config_json(cfg, "verify");
            meta["job"] = fig.report.name;
            meta["x_label"] = curve.x_label;
            meta["theta_scale"] = cfg.theta_scale;
            meta["sample_scale"] = cfg.sample_scale;
            std::vector<std::string> names{"x", "analytic"};
            std::vector<const std::vector<double>*> cols{&curve.x, &curve.analytic};
            if (!curve.empirical.empty()) {
                names.push_back("empirical");
                cols.push_back(&curve.empirical);
            }
            io::write_csv(dir / (curve.name + ".csv"), meta, names, cols);
        }
        std::printf("[%s] %-26s %s=%.6g threshold=%.4g (%.2fs, n=%llu)\n",
                    fig.report.pass ? "PASS" : "FAIL", fig.report.name.c_str(),
                    io::stat_kind_name(fig.report.statistic), fig.report.value,
                    fig.report.threshold, fig.report.runtime_seconds,
                    static_cast<unsigned long long>(fig.report.n_samples));
    }
    nlohmann::json doc;
    doc["config"] = config_json(cfg, "verify");
    doc["config"]["theta_scale"] = cfg.theta_scale;
    doc["config"]["sample_scale"] = cfg.sample_scale;
    doc["reports"] = reports;
    io::write_json(dir / "verification_reports.json", doc);
    std::printf("%s (%zu jobs)\n", all_pass ? "ALL PASS" : "FAILURES PRESENT", results.size());
    return all_pass ? kExitOk : kExitVerifyFailed;
}

int cmd_crossings(const RunConfig& cfg) {
    const MobilityParams m = cfg.mobility();
    const CirParams cir = derive_cir(m);
    const PathLossParams pl = cfg.path_loss();
    const SnrThreshold thr(cfg.rho_th, pl);
    const double dt = cfg.resolved_dt();
    const auto n_steps = static_cast<std::size_t>(std::ceil(cfg.horizon / dt));
    if (n_steps < 1) throw std::invalid_argument("crossings: horizon shorter than one step");

    const sim::PairPaths pair =
        sim::simulate_pair_2d(m, dt, n_steps, sim::PairInit::stationary(), cfg.seed);
    sim::SamplePath snr{dt, cfg.seed, sim::PathKind::snr, {}, {}};
    snr.values.reserve(pair.z.values.size());
    const double half_eta = 0.5 * pl.eta();
    for (double z : pair.z.values) {
        snr.values.push_back(z > 0.0 ? cfg.psi * std::pow(z, -half_eta) : 1e300);
    }
    const verify::CrossingSummary cs = verify::crossing_analysis(snr, thr);
    const double conn = analytic::conn_prob_nofading(thr, cir, pl);

    const fs::path dir = prepare_out_dir(cfg);
    nlohmann::json meta = config_json(cfg, "crossings");
    nlohmann::json summary = io::to_json(cs);
    summary["conn_prob_nofading"] = conn;
    summary["config"] = meta;
    io::write_json(dir / "crossing_summary.json", summary);

    std::vector<double> t(snr.values.size()), thr_line(snr.values.size(), thr.rho_th);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i) * dt;
    io::write_csv(dir / "snr_path.csv", meta, {"t", "snr", "threshold"},
                  {&t, &snr.values, &thr_line});
    if (!cs.on_durations.empty()) {
        std::vector<double> idx(cs.on_durations.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<double>(i);
        io::write_csv(dir / "on_durations.csv", meta, {"i", "seconds"}, {&idx, &cs.on_durations});
    }
    if (!cs.off_durations.empty()) {
        std::vector<double> idx(cs.off_durations.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<double>(i);
        io::write_csv(dir / "off_durations.csv", meta, {"i", "seconds"}, {&idx, &cs.off_durations});
    }
    std::printf("fraction_on=%.6f conn_prob=%.6f horizon=%.1fs\n", cs.fraction_on, conn, cs.horizon);
    return kExitOk;
}

int dispatch(const std::string& command, const RunConfig& cfg) {
    try {
        if (command == "dist") return cmd_dist(cfg);
        if (command == "simulate") return cmd_simulate(cfg);
        if (command == "verify") return cmd_verify(cfg);
        if (command == "crossings") return cmd_crossings(cfg);
        std::cerr << "error: unknown command '" << command << "'\n";
        return kExitUsage;
    } catch (const numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace linkdyn::cli
