#pragma once

#include <cmath>
#include <string>

namespace linkdyn {

/// Ornstein-Uhlenbeck mobility parameters for one coordinate axis.
struct MobilityParams {
    double tau;       ///< relaxation time [s], > 0
    double diffusion; ///< diffusion coefficient D [m^2/s], > 0
    double mu;        ///< desired position per axis [m]

    MobilityParams(double tau_, double diffusion_, double mu_ = 0.0);
};

/// Path loss exponent eta = p/q stored as a reduced rational, plus the
/// link-budget constant psi. Rationality matters: the fading SNR density is
/// stated for rational exponents and the eta=2 / eta=4 closed forms dispatch
/// on the exact value.
class PathLossParams {
public:
    PathLossParams(long p, long q, double psi = 1.0);

    /// Continued-fraction rationalization of a float exponent, denominator
    /// capped (default 100). The chosen (p,q) can be echoed back via p()/q().
    static PathLossParams from_eta(double eta, double psi = 1.0, long max_denominator = 100);

    /// Accepts either "p/q" or a float literal.
    static PathLossParams parse_eta(const std::string& text, double psi = 1.0);

    long p() const { return p_; }
    long q() const { return q_; }
    double eta() const { return static_cast<double>(p_) / static_cast<double>(q_); }
    double psi() const { return psi_; }

    /// True when eta falls outside the typical [2,5] range; a warning
    /// condition, not an error.
    bool eta_outside_typical() const;

private:
    long p_, q_;
    double psi_;
};

/// Doppler/channel parameters. The Rayleigh parameter lambda is frozen to 1:
/// the channel gain is exponential with mean one throughout.
struct ChannelParams {
    double nu_max; ///< maximum Doppler shift [Hz], >= 0

    explicit ChannelParams(double nu_max_);
    static constexpr double lambda() { return 1.0; }
};

/// Square-distance diffusion parameters (CIR form): reversion rate k,
/// long-term mean theta, volatility sigma.
struct CirParams {
    double k;     ///< 1/s
    double theta; ///< m^2
    double sigma; ///< m/sqrt(s)

    CirParams(double k_, double theta_, double sigma_);
};

/// k = 2/tau, theta = 2 D tau, sigma = 2 sqrt(2D). The Feller condition
/// 2 k theta = sigma^2 holds with equality for every valid input.
CirParams derive_cir(const MobilityParams& m);

/// Transition-kernel coefficients for a time lag: c = 1/(theta(1-e^{-k lag})),
/// u = c e^{-k lag}. Rice parameters a^2 = u/c, b^2 = 1/(2c). Zero lag is
/// rejected (c undefined); the lag->0 limit is a Dirac kernel and is covered
/// by documented identities instead.
struct TransitionCoefficients {
    double c;   ///< 1/m^2
    double u;   ///< 1/m^2
    double lag; ///< s, > 0

    TransitionCoefficients(const CirParams& cir, double lag_);

    double a() const { return std::sqrt(u / c); }
    double b() const { return std::sqrt(0.5 / c); }
};

/// SNR threshold and the connection range it implies, r0 = (psi/rho_th)^{1/eta}.
/// rho_th = 0 is the documented always-connected boundary (r0 infinite).
struct SnrThreshold {
    double rho_th; ///< linear SNR threshold, >= 0
    double r0;     ///< connection range [m]

    SnrThreshold(double rho_th_, const PathLossParams& pl);
};

double db_to_linear(double x_db);
double linear_to_db(double x);

} // namespace linkdyn
