#pragma once

#include "linkdyn/params.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace linkdyn::cli {

struct GridSpec {
    double min = 1e-3;
    double max = 1e3;
    int points = 200;
    bool log_scale = false;
};

/// Resolved run configuration: defaults, overlaid by the config file,
/// overlaid by command-line flags.
struct RunConfig {
    // model parameters (config-file keys)
    double tau = 1.0;
    double diffusion = 100.0;
    double mu = 0.0;
    std::string eta = "2"; ///< float literal or "p/q"
    double psi = 1.0;
    double nu_max = 100.0;
    double rho_th = 0.0; ///< linear; default set from rho_th_db = 2
    std::uint64_t seed = 12345;
    double dt = 0.0; ///< <= 0 resolves to 1e-3 * tau
    double horizon = 10.0;
    std::uint64_t samples = 100000;

    // fading generator knobs
    int ar_order = 50;
    double bias_eps = 1e-9;

    // outputs
    std::string out_dir; ///< empty resolves to $LINKDYN_OUTDIR or ./out
    int bins = 100;

    // dist
    std::string curve;
    GridSpec grid;
    double lag = 0.2;
    double z0 = 3000.0;
    double r_cond = 0.0; ///< conditioning distance for r-transition
    double rho_t = 0.0;  ///< second coordinate of the bivariate slice

    // simulate
    std::string process = "pair2d";
    std::string init = "stationary"; ///< or "fixed"
    double x1 = 0.0, y1 = 0.0, x2 = 0.0, y2 = 0.0;

    // verify
    std::string only;
    double theta_scale = 1.0;
    double sample_scale = 1.0;
    bool sequential = false;

    RunConfig();

    double resolved_dt() const { return dt > 0.0 ? dt : 1e-3 * tau; }
    std::string resolved_out_dir() const;

    MobilityParams mobility() const { return MobilityParams(tau, diffusion, mu); }
    PathLossParams path_loss() const { return PathLossParams::parse_eta(eta, psi); }
    ChannelParams channel() const { return ChannelParams(nu_max); }
};

/// Applies one `key = value` pair from the plain-text config format.
/// Unknown keys are an error.
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

/// Loads a `key = value` file ('#' comments, blank lines ignored).
void load_config_file(RunConfig& cfg, const std::string& path);

/// Fully resolved configuration for metadata headers; re-running from this
/// reproduces outputs byte for byte.
nlohmann::json config_json(const RunConfig& cfg, const std::string& command);

} // namespace linkdyn::cli
