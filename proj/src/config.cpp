#include "linkdyn/config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace linkdyn::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("config: malformed number for '" + key + "': " + value);
    return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument("config: malformed integer for '" + key + "': " + value);
    return v;
}

} // namespace

RunConfig::RunConfig() : rho_th(db_to_linear(2.0)) {}

std::string RunConfig::resolved_out_dir() const {
    if (!out_dir.empty()) return out_dir;
    if (const char* env = std::getenv("LINKDYN_OUTDIR"); env != nullptr && *env != '\0') return env;
    return "./out";
}

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "tau") cfg.tau = parse_double(key, value);
    else if (key == "diffusion") cfg.diffusion = parse_double(key, value);
    else if (key == "mu") cfg.mu = parse_double(key, value);
    else if (key == "eta") cfg.eta = value;
    else if (key == "psi") cfg.psi = parse_double(key, value);
    else if (key == "nu_max") cfg.nu_max = parse_double(key, value);
    else if (key == "rho_th_db") cfg.rho_th = db_to_linear(parse_double(key, value));
    else if (key == "seed") cfg.seed = parse_u64(key, value);
    else if (key == "dt") cfg.dt = parse_double(key, value);
    else if (key == "horizon") cfg.horizon = parse_double(key, value);
    else if (key == "samples") cfg.samples = parse_u64(key, value);
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config: line " + std::to_string(lineno) + " is not 'key = value'");
        }
        apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

nlohmann::json config_json(const RunConfig& cfg, const std::string& command) {
    const PathLossParams pl = cfg.path_loss();
    return nlohmann::json{
        {"command", command},
        {"tau", cfg.tau},
        {"diffusion", cfg.diffusion},
        {"mu", cfg.mu},
        {"eta", std::to_string(pl.p()) + "/" + std::to_string(pl.q())},
        {"psi", cfg.psi},
        {"nu_max", cfg.nu_max},
        {"rho_th", cfg.rho_th},
        {"seed", cfg.seed},
        {"dt", cfg.resolved_dt()},
        {"horizon", cfg.horizon},
        {"samples", cfg.samples},
        {"ar_order", cfg.ar_order},
        {"bias_eps", cfg.bias_eps},
        {"bins", cfg.bins},
    };
}

} // namespace linkdyn::cli
