#pragma once

#include "linkdyn/params.hpp"
#include "linkdyn/quadrature.hpp"

#include <string>
#include <vector>

namespace linkdyn::analytic {

/// Truncation control for the bivariate series.
struct SeriesControl {
    double rel_tol = 1e-10;
    int max_terms = 10000;
};

struct SeriesResult {
    double value;
    int terms_used;
};

enum class CurveKind { pdf, cdf };

/// A sampled analytic or empirical curve. validate() enforces a strictly
/// increasing grid, nonnegative densities, and cdf monotonicity within [0,1].
struct DistributionCurve {
    std::vector<double> abscissa;
    std::vector<double> values;
    CurveKind kind = CurveKind::pdf;
    std::string source;

    void validate() const;
};

struct OuMoments {
    double mean;
    double variance;
};

/// Conditional mean/variance of one OU coordinate after time t from s0.
OuMoments ou_moments(double t, double s0, const MobilityParams& m);

/// Stationary autocovariance (D tau / 2) e^{-lag/tau}.
double ou_autocov(double lag, const MobilityParams& m);

/// Transition density of the squared distance over a positive lag
/// (noncentral chi-square form, evaluated in log space).
double z_transition_pdf(double z_s, double z_t, double lag, const CirParams& cir);
double z_transition_log_pdf(double z_s, double z_t, double lag, const CirParams& cir);

/// Stationary law of the squared distance: Exp(theta).
double z_stationary_pdf(double z, const CirParams& cir);
double z_stationary_cdf(double z, const CirParams& cir);

/// Stationary autocovariance theta^2 e^{-k lag}.
double z_autocov(double lag, const CirParams& cir);

/// Joint stationary cdf P(Z_s <= z_s, Z_t <= z_t) over a positive lag,
/// summed as (1-lam) sum_j lam^j P(j+1, c z_s) P(j+1, c z_t) with
/// lam = e^{-k lag}. All terms positive; tail bounded by the observed ratio.
SeriesResult z_bivariate_cdf(double z_s, double z_t, double lag, const CirParams& cir,
                             const SeriesControl& ctrl = {});

/// Transition density of the distance process (Rice form, log-space).
double r_transition_pdf(double r_s, double r_t, double lag, const CirParams& cir);

/// Stationary Rayleigh density of the distance.
double r_stationary_pdf(double r, const CirParams& cir);

/// Instantaneous SNR law without fading, N = psi Z^{-eta/2}.
double snr_pdf_nofading(double rho, const CirParams& cir, const PathLossParams& pl);
double snr_cdf_nofading(double rho, const CirParams& cir, const PathLossParams& pl);
double conn_prob_nofading(const SnrThreshold& thr, const CirParams& cir, const PathLossParams& pl);

/// Joint cdf P(N_s <= rho_s, N_t <= rho_t) of the SNR pair over a positive
/// lag. Equals the upper-orthant mass of the squared-distance pair; summed
/// as (1-lam) sum_j lam^j Q(j+1, c x_s) Q(j+1, c x_t) with x = (rho/psi)^{-2/eta}.
SeriesResult snr_bivariate_cdf(double rho_s, double rho_t, double lag, const CirParams& cir,
                               const PathLossParams& pl, const SeriesControl& ctrl = {});

/// Joint density of the SNR pair (series accumulated in log space).
SeriesResult snr_bivariate_pdf(double rho_s, double rho_t, double lag, const CirParams& cir,
                               const PathLossParams& pl, const SeriesControl& ctrl = {});

/// SNR density under Rayleigh fading for rational eta, by adaptive
/// quadrature of the marginalization integral
///   f(rho) = (1/theta) \int_0^inf w^{eta/2} e^{-w/theta - rho w^{eta/2}} dw
/// after the w = upsilon^{2/eta} substitution.
double snr_pdf_fading(double rho, const CirParams& cir, const PathLossParams& pl,
                      const QuadratureControl& quad = {});

/// Closed forms for eta = 2 (shifted Pareto) and eta = 4 (scaled erfc).
double snr_pdf_fading_eta2(double rho, const CirParams& cir, double psi = 1.0);
double snr_cdf_fading_eta2(double rho, const CirParams& cir, double psi = 1.0);
double conn_prob_fading_eta2(const SnrThreshold& thr, const CirParams& cir, double psi = 1.0);
double snr_pdf_fading_eta4(double rho, const CirParams& cir, double psi = 1.0);

} // namespace linkdyn::analytic
