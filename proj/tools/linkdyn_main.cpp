#include "linkdyn/cli.hpp"
#include "linkdyn/params.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

using linkdyn::cli::RunConfig;

void add_common_options(CLI::App* cmd, RunConfig& cfg) {
    // the file itself is resolved in a pre-scan so flags can override it;
    // registering it here lets it appear after the subcommand too
    static std::string config_path;
    cmd->add_option("--config", config_path, "key = value config file");
    cmd->add_option("--tau", cfg.tau, "OU relaxation time [s]")->capture_default_str();
    cmd->add_option("--diffusion,-D", cfg.diffusion, "OU diffusion coefficient [m^2/s]")->capture_default_str();
    cmd->add_option("--mu", cfg.mu, "desired position per axis [m]")->capture_default_str();
    cmd->add_option("--eta", cfg.eta, "path loss exponent, float or p/q")->capture_default_str();
    cmd->add_option("--psi", cfg.psi, "link budget constant (linear)")->capture_default_str();
    cmd->add_option("--nu-max", cfg.nu_max, "maximum Doppler shift [Hz]")->capture_default_str();
    auto* db = cmd->add_option_function<double>(
        "--rho-th-db", [&cfg](double v) { cfg.rho_th = linkdyn::db_to_linear(v); },
        "SNR threshold [dB]");
    cmd->add_option("--rho-th", cfg.rho_th, "SNR threshold (linear)")->excludes(db);
    cmd->add_option("--seed", cfg.seed, "RNG master seed")->capture_default_str();
    cmd->add_option("--dt", cfg.dt, "time step [s]; 0 means 1e-3*tau");
    cmd->add_option("--horizon", cfg.horizon, "simulated horizon [s]")->capture_default_str();
    cmd->add_option("--samples", cfg.samples, "sample count")->capture_default_str();
    cmd->add_option("--ar-order", cfg.ar_order, "fading AR model order")->capture_default_str();
    cmd->add_option("--bias-eps", cfg.bias_eps, "fading Yule-Walker diagonal loading")->capture_default_str();
    cmd->add_option("--out", cfg.out_dir, "output directory (default $LINKDYN_OUTDIR or ./out)");
    cmd->add_option("--bins", cfg.bins, "histogram bin count")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;

    // the config file underlays flag values, so resolve it before CLI11 binds
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            try {
                linkdyn::cli::load_config_file(cfg, argv[i + 1]);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return linkdyn::cli::kExitUsage;
            }
        }
    }

    CLI::App app{"Wireless link dynamics under OU mobility and Rayleigh fading: "
                 "analytic distributions, sample-path simulation, verification suite"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "key = value config file")->expected(1);

    CLI::App* dist = app.add_subcommand("dist", "evaluate an analytic curve on a grid");
    add_common_options(dist, cfg);
    dist->add_option("--curve", cfg.curve, "curve name (e.g. z-stationary-pdf, snr-pdf-fading)")->required();
    dist->add_option("--min", cfg.grid.min, "grid minimum")->capture_default_str();
    dist->add_option("--max", cfg.grid.max, "grid maximum")->capture_default_str();
    dist->add_option("--points", cfg.grid.points, "grid size")->capture_default_str();
    dist->add_flag("--log", cfg.grid.log_scale, "log-spaced grid");
    dist->add_option("--lag", cfg.lag, "time lag for transition/bivariate curves [s]")->capture_default_str();
    dist->add_option("--z0", cfg.z0, "conditioning squared distance [m^2]")->capture_default_str();
    dist->add_option("--r0", cfg.r_cond, "conditioning distance [m]")->capture_default_str();
    dist->add_option("--rho-t", cfg.rho_t, "second coordinate of the bivariate slice");

    CLI::App* simulate = app.add_subcommand("simulate", "simulate a sample path");
    add_common_options(simulate, cfg);
    simulate->add_option("--process", cfg.process,
                         "ou | pair2d | z-euler | snr-euler | gain | gain-iid")->capture_default_str();
    simulate->add_option("--init", cfg.init, "stationary | fixed")->capture_default_str();
    simulate->add_option("--x1", cfg.x1, "fixed init: node 1 x (also the ou/z0 start)");
    simulate->add_option("--y1", cfg.y1, "fixed init: node 1 y");
    simulate->add_option("--x2", cfg.x2, "fixed init: node 2 x");
    simulate->add_option("--y2", cfg.y2, "fixed init: node 2 y");
    simulate->add_option("--z0", cfg.z0, "fixed init for z-euler / snr-euler")->capture_default_str();

    CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
    add_common_options(verify, cfg);
    verify->add_option("--only", cfg.only, "run only jobs whose name contains this substring");
    verify->add_option("--perturb-theta", cfg.theta_scale,
                       "scale analytic theta (negative control)")->capture_default_str();
    verify->add_option("--sample-scale", cfg.sample_scale,
                       "scale sample counts (quick runs)")->capture_default_str();
    verify->add_flag("--sequential", cfg.sequential, "disable job-level parallelism");

    CLI::App* crossings = app.add_subcommand("crossings", "SNR level-crossing analysis");
    add_common_options(crossings, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return linkdyn::cli::kExitUsage;
    }

    for (CLI::App* sub : {dist, simulate, verify, crossings}) {
        if (sub->parsed()) return linkdyn::cli::dispatch(sub->get_name(), cfg);
    }
    return linkdyn::cli::kExitUsage;
}
