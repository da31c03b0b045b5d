#include "linkdyn/params.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace linkdyn {

MobilityParams::MobilityParams(double tau_, double diffusion_, double mu_)
    : tau(tau_), diffusion(diffusion_), mu(mu_) {
    if (!(tau > 0.0)) throw std::invalid_argument("MobilityParams: tau must be > 0");
    if (!(diffusion > 0.0)) throw std::invalid_argument("MobilityParams: diffusion must be > 0");
    if (!std::isfinite(mu)) throw std::invalid_argument("MobilityParams: mu must be finite");
}

PathLossParams::PathLossParams(long p, long q, double psi) : p_(p), q_(q), psi_(psi) {
    if (p < 1 || q < 1) throw std::invalid_argument("PathLossParams: p and q must be >= 1");
    if (!(psi > 0.0)) throw std::invalid_argument("PathLossParams: psi must be > 0");
    const long g = std::gcd(p_, q_);
    p_ /= g;
    q_ /= g;
}

PathLossParams PathLossParams::from_eta(double eta, double psi, long max_denominator) {
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw std::invalid_argument("PathLossParams: eta must be a positive finite number");
    }
    if (max_denominator < 1) throw std::invalid_argument("PathLossParams: max_denominator must be >= 1");
    // continued-fraction convergents until the denominator cap
    long p_prev = 1, q_prev = 0;
    long p_cur = static_cast<long>(std::floor(eta)), q_cur = 1;
    double frac = eta - std::floor(eta);
    while (frac > 1e-12 && std::fabs(static_cast<double>(p_cur) / q_cur - eta) > 1e-12) {
        const double inv = 1.0 / frac;
        const long a = static_cast<long>(std::floor(inv));
        frac = inv - std::floor(inv);
        const long p_next = a * p_cur + p_prev;
        const long q_next = a * q_cur + q_prev;
        if (q_next > max_denominator) break;
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
    }
    if (p_cur < 1) throw std::invalid_argument("PathLossParams: eta too small to rationalize");
    return PathLossParams(p_cur, q_cur, psi);
}

PathLossParams PathLossParams::parse_eta(const std::string& text, double psi) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::size_t used_p = 0, used_q = 0;
        const long p = std::stol(text.substr(0, slash), &used_p);
        const std::string den = text.substr(slash + 1);
        const long q = std::stol(den, &used_q);
        if (used_p != slash || used_q != den.size()) {
            throw std::invalid_argument("PathLossParams: malformed rational '" + text + "'");
        }
        return PathLossParams(p, q, psi);
    }
    std::size_t used = 0;
    const double eta = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("PathLossParams: malformed eta '" + text + "'");
    return from_eta(eta, psi);
}

bool PathLossParams::eta_outside_typical() const {
    const double e = eta();
    return e < 2.0 || e > 5.0;
}

ChannelParams::ChannelParams(double nu_max_) : nu_max(nu_max_) {
    if (!(nu_max >= 0.0)) throw std::invalid_argument("ChannelParams: nu_max must be >= 0");
}

CirParams::CirParams(double k_, double theta_, double sigma_) : k(k_), theta(theta_), sigma(sigma_) {
    if (!(k > 0.0)) throw std::invalid_argument("CirParams: k must be > 0");
    if (!(theta > 0.0)) throw std::invalid_argument("CirParams: theta must be > 0");
    if (!(sigma >= 0.0)) throw std::invalid_argument("CirParams: sigma must be >= 0");
}

CirParams derive_cir(const MobilityParams& m) {
    return CirParams(2.0 / m.tau, 2.0 * m.diffusion * m.tau, 2.0 * std::sqrt(2.0 * m.diffusion));
}

TransitionCoefficients::TransitionCoefficients(const CirParams& cir, double lag_) : lag(lag_) {
    if (!(lag > 0.0)) throw std::domain_error("TransitionCoefficients: lag must be > 0");
    const double decay = std::exp(-cir.k * lag);
    c = 1.0 / (cir.theta * (-std::expm1(-cir.k * lag)));
    u = c * decay;
}

SnrThreshold::SnrThreshold(double rho_th_, const PathLossParams& pl) : rho_th(rho_th_) {
    if (!(rho_th >= 0.0)) throw std::invalid_argument("SnrThreshold: rho_th must be >= 0");
    r0 = std::pow(pl.psi() / rho_th, 1.0 / pl.eta());
}

double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

double linear_to_db(double x) {
    if (!(x > 0.0)) throw std::domain_error("linear_to_db: argument must be > 0");
    return 10.0 * std::log10(x);
}

} // namespace linkdyn
