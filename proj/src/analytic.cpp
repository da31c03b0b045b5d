#include "linkdyn/analytic.hpp"

#include "linkdyn/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace linkdyn::analytic {

namespace {

constexpr double kLogTiny = -745.0; // below exp underflow

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

/// Common kernel of the two bivariate series: sum_j (1-lam) lam^j g_s(j) g_t(j)
/// where g is either P(j+1, y) (lower orthant) or Q(j+1, y) (upper orthant).
/// Both sequences are advanced by the one-term recurrence
/// P(j+2,y) = P(j+1,y) -+ exp(-y + (j+1) ln y - lgamma(j+2)).
SeriesResult geometric_gamma_series(double y_s, double y_t, double lam, bool upper,
                                    const SeriesControl& ctrl) {
    if (!(ctrl.rel_tol > 0.0 && ctrl.rel_tol < 1.0)) throw std::invalid_argument("SeriesControl: rel_tol must be in (0,1)");
    if (ctrl.max_terms < 1) throw std::invalid_argument("SeriesControl: max_terms must be >= 1");
    if (!upper && (y_s == 0.0 || y_t == 0.0)) return SeriesResult{0.0, 1};
    if (!(1.0 - lam > 0.0)) {
        throw numerical_error("bivariate series: lag below floating-point resolution", 0.0, 1.0);
    }
    const double log_ys = y_s > 0.0 ? std::log(y_s) : -std::numeric_limits<double>::infinity();
    const double log_yt = y_t > 0.0 ? std::log(y_t) : -std::numeric_limits<double>::infinity();
    double gs = upper ? std::exp(-y_s) : -std::expm1(-y_s);
    double gt = upper ? std::exp(-y_t) : -std::expm1(-y_t);
    double weight = 1.0 - lam;
    double sum = 0.0;
    double prev_term = std::numeric_limits<double>::infinity();
    for (int j = 0; j < ctrl.max_terms; ++j) {
        const double term = weight * gs * gt;
        sum += term;
        if (j > 0 && sum > 0.0 && term <= prev_term) {
            if (term == 0.0) return SeriesResult{clamp01(sum), j + 1};
            // all terms positive and, past the peak, the term ratio only
            // shrinks; bound the tail with the observed ratio
            const double ratio = term / prev_term;
            if (ratio < 1.0 && term * ratio / (1.0 - ratio) <= ctrl.rel_tol * sum) {
                return SeriesResult{clamp01(sum), j + 1};
            }
        }
        prev_term = term;
        const double log_fact = sf::log_gamma(j + 2.0);
        const double dlt_s = std::exp(-y_s + (j + 1) * log_ys - log_fact);
        const double dlt_t = std::exp(-y_t + (j + 1) * log_yt - log_fact);
        if (upper) {
            gs = std::min(1.0, gs + dlt_s);
            gt = std::min(1.0, gt + dlt_t);
        } else {
            gs = std::max(0.0, gs - dlt_s);
            gt = std::max(0.0, gt - dlt_t);
        }
        weight *= lam;
    }
    throw numerical_error("bivariate series did not converge", clamp01(sum), prev_term);
}

} // namespace

void DistributionCurve::validate() const {
    if (abscissa.size() != values.size()) throw std::invalid_argument("DistributionCurve: size mismatch");
    if (abscissa.empty()) throw std::invalid_argument("DistributionCurve: empty");
    for (std::size_t i = 0; i + 1 < abscissa.size(); ++i) {
        if (!(abscissa[i] < abscissa[i + 1])) throw std::invalid_argument("DistributionCurve: abscissa must strictly increase");
    }
    if (kind == CurveKind::pdf) {
        for (double v : values) {
            if (!(v >= 0.0)) throw std::invalid_argument("DistributionCurve: pdf values must be >= 0");
        }
    } else {
        double prev = 0.0;
        for (double v : values) {
            if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) throw std::invalid_argument("DistributionCurve: cdf values must lie in [0,1]");
            if (v < prev - 1e-12) throw std::invalid_argument("DistributionCurve: cdf values must be nondecreasing");
            prev = v;
        }
    }
}

OuMoments ou_moments(double t, double s0, const MobilityParams& m) {
    if (!(t >= 0.0)) throw std::domain_error("ou_moments: t must be >= 0");
    const double decay = std::exp(-t / m.tau);
    const double mean = m.mu + (s0 - m.mu) * decay;
    const double variance = 0.5 * m.diffusion * m.tau * (-std::expm1(-2.0 * t / m.tau));
    return OuMoments{mean, variance};
}

double ou_autocov(double lag, const MobilityParams& m) {
    if (!(lag >= 0.0)) throw std::domain_error("ou_autocov: lag must be >= 0");
    return 0.5 * m.diffusion * m.tau * std::exp(-lag / m.tau);
}

double z_transition_log_pdf(double z_s, double z_t, double lag, const CirParams& cir) {
    if (!(z_s >= 0.0 && z_t >= 0.0)) throw std::domain_error("z_transition_pdf: arguments must be >= 0");
    const TransitionCoefficients tc(cir, lag);
    const double sc = z_s * tc.c;
    const double tu = z_t * tc.u;
    const double diff = std::sqrt(sc) - std::sqrt(tu);
    return std::log(tc.c) - diff * diff + sf::log_bessel_i0_scaled(2.0 * std::sqrt(sc * tu));
}

double z_transition_pdf(double z_s, double z_t, double lag, const CirParams& cir) {
    const double lp = z_transition_log_pdf(z_s, z_t, lag, cir);
    return lp < kLogTiny ? 0.0 : std::exp(lp);
}

double z_stationary_pdf(double z, const CirParams& cir) {
    if (!(z >= 0.0)) throw std::domain_error("z_stationary_pdf: z must be >= 0");
    return std::exp(-z / cir.theta) / cir.theta;
}

double z_stationary_cdf(double z, const CirParams& cir) {
    if (!(z >= 0.0)) throw std::domain_error("z_stationary_cdf: z must be >= 0");
    return -std::expm1(-z / cir.theta);
}

double z_autocov(double lag, const CirParams& cir) {
    if (!(lag >= 0.0)) throw std::domain_error("z_autocov: lag must be >= 0");
    return cir.theta * cir.theta * std::exp(-cir.k * lag);
}

SeriesResult z_bivariate_cdf(double z_s, double z_t, double lag, const CirParams& cir,
                             const SeriesControl& ctrl) {
    if (!(z_s >= 0.0 && z_t >= 0.0)) throw std::domain_error("z_bivariate_cdf: arguments must be >= 0");
    const TransitionCoefficients tc(cir, lag);
    const double lam = std::exp(-cir.k * lag);
    return geometric_gamma_series(tc.c * z_s, tc.c * z_t, lam, /*upper=*/false, ctrl);
}

double r_transition_pdf(double r_s, double r_t, double lag, const CirParams& cir) {
    if (!(r_s >= 0.0 && r_t >= 0.0)) throw std::domain_error("r_transition_pdf: arguments must be >= 0");
    if (r_s == 0.0) return 0.0;
    const TransitionCoefficients tc(cir, lag);
    const double b2 = 0.5 / tc.c;
    const double a = tc.a();
    const double diff = r_s - r_t * a;
    const double lp = std::log(r_s / b2) - diff * diff / (2.0 * b2) +
                      sf::log_bessel_i0_scaled(r_s * r_t * a / b2);
    return lp < kLogTiny ? 0.0 : std::exp(lp);
}

double r_stationary_pdf(double r, const CirParams& cir) {
    if (!(r >= 0.0)) throw std::domain_error("r_stationary_pdf: r must be >= 0");
    return 2.0 * r / cir.theta * std::exp(-r * r / cir.theta);
}

double snr_pdf_nofading(double rho, const CirParams& cir, const PathLossParams& pl) {
    if (!(rho > 0.0)) throw std::domain_error("snr_pdf_nofading: rho must be > 0");
    const double beta = 2.0 / pl.eta();
    const double r = rho / pl.psi();
    const double x = std::pow(r, -beta);
    return beta / cir.theta * std::pow(r, -beta - 1.0) * std::exp(-x / cir.theta) / pl.psi();
}

double snr_cdf_nofading(double rho, const CirParams& cir, const PathLossParams& pl) {
    if (!(rho > 0.0)) throw std::domain_error("snr_cdf_nofading: rho must be > 0");
    const double beta = 2.0 / pl.eta();
    return std::exp(-std::pow(rho / pl.psi(), -beta) / cir.theta);
}

double conn_prob_nofading(const SnrThreshold& thr, const CirParams& cir, const PathLossParams& pl) {
    if (thr.rho_th == 0.0) return 1.0;
    const double beta = 2.0 / pl.eta();
    return -std::expm1(-std::pow(thr.rho_th / pl.psi(), -beta) / cir.theta);
}

SeriesResult snr_bivariate_cdf(double rho_s, double rho_t, double lag, const CirParams& cir,
                               const PathLossParams& pl, const SeriesControl& ctrl) {
    if (!(rho_s > 0.0 && rho_t > 0.0)) throw std::domain_error("snr_bivariate_cdf: rho must be > 0");
    const double beta = 2.0 / pl.eta();
    const double x_s = std::pow(rho_s / pl.psi(), -beta);
    const double x_t = std::pow(rho_t / pl.psi(), -beta);
    const TransitionCoefficients tc(cir, lag);
    const double lam = std::exp(-cir.k * lag);
    // {N_s <= rho_s, N_t <= rho_t} = {Z_s >= x_s, Z_t >= x_t}
    return geometric_gamma_series(tc.c * x_s, tc.c * x_t, lam, /*upper=*/true, ctrl);
}

SeriesResult snr_bivariate_pdf(double rho_s, double rho_t, double lag, const CirParams& cir,
                               const PathLossParams& pl, const SeriesControl& ctrl) {
    if (!(rho_s > 0.0 && rho_t > 0.0)) throw std::domain_error("snr_bivariate_pdf: rho must be > 0");
    if (!(ctrl.rel_tol > 0.0 && ctrl.rel_tol < 1.0)) throw std::invalid_argument("SeriesControl: rel_tol must be in (0,1)");
    if (ctrl.max_terms < 1) throw std::invalid_argument("SeriesControl: max_terms must be >= 1");
    const double beta = 2.0 / pl.eta();
    const double rs = rho_s / pl.psi();
    const double rt = rho_t / pl.psi();
    const double x_s = std::pow(rs, -beta);
    const double x_t = std::pow(rt, -beta);
    const TransitionCoefficients tc(cir, lag);
    const double log_pref = 2.0 * std::log(beta) - std::log(cir.theta) + std::log(tc.c) -
                            tc.c * (x_s + x_t) - (beta + 1.0) * (std::log(rs) + std::log(rt)) -
                            2.0 * std::log(pl.psi());
    // series sum_j v^j / (j!)^2 with v = u c x_s x_t, accumulated in log space
    const double v = tc.u * tc.c * x_s * x_t;
    const double log_v = v > 0.0 ? std::log(tc.u) + std::log(tc.c) + std::log(x_s) + std::log(x_t)
                                 : -std::numeric_limits<double>::infinity();
    const double peak = std::sqrt(std::max(v, 0.0));
    double log_sum = -std::numeric_limits<double>::infinity();
    const double log_tol = std::log(ctrl.rel_tol);
    for (int j = 0; j < ctrl.max_terms; ++j) {
        const double log_term = j * log_v - 2.0 * sf::log_gamma(j + 1.0);
        if (log_sum == -std::numeric_limits<double>::infinity()) {
            log_sum = log_term;
        } else if (log_term > log_sum) {
            log_sum = log_term + std::log1p(std::exp(log_sum - log_term));
        } else {
            log_sum += std::log1p(std::exp(log_term - log_sum));
        }
        if (j > peak && log_term < log_sum + log_tol) {
            const double lp = log_pref + log_sum;
            return SeriesResult{lp < kLogTiny ? 0.0 : std::exp(lp), j + 1};
        }
    }
    throw numerical_error("bivariate pdf series did not converge", std::exp(log_pref + log_sum), 1.0);
}

double snr_pdf_fading(double rho, const CirParams& cir, const PathLossParams& pl,
                      const QuadratureControl& quad) {
    if (!(rho > 0.0)) throw std::domain_error("snr_pdf_fading: rho must be > 0");
    const double h = 0.5 * pl.eta();
    const double th = cir.theta;
    const double r = rho / pl.psi();
    auto integrand = [h, th, r](double w) {
        if (w <= 0.0) return 0.0;
        const double lw = std::log(w);
        const double e = h * lw - w / th - r * std::exp(h * lw);
        return e < kLogTiny ? 0.0 : std::exp(e);
    };
    // crude peak scale: the w/theta decay turns over near h*theta, the
    // rho w^h decay near r^{-1/h}; seed panels around the smaller one
    const double w_star = std::min(h * th, std::pow(r, -1.0 / h));
    double w_hi = std::max(4.0 * w_star, 4.0 * th);
    const double log_peak = h * std::log(w_star) - w_star / th - r * std::pow(w_star, h);
    while (w_hi < 1e300) {
        const double lw = std::log(w_hi);
        if (h * lw - w_hi / th - r * std::exp(h * lw) < log_peak - 60.0) break;
        w_hi *= 2.0;
    }
    std::vector<double> knots{0.0, 0.25 * w_star, w_star, 4.0 * w_star};
    while (knots.back() * 4.0 < w_hi) knots.push_back(knots.back() * 4.0);
    knots.push_back(w_hi);
    const QuadratureResult res = integrate_segments(integrand, knots, quad);
    return res.value / (th * pl.psi());
}

double snr_pdf_fading_eta2(double rho, const CirParams& cir, double psi) {
    if (!(rho >= 0.0)) throw std::domain_error("snr_pdf_fading_eta2: rho must be >= 0");
    const double th = cir.theta;
    const double r = rho / psi;
    const double s = r + 1.0 / th;
    return 1.0 / (th * s * s) / psi;
}

double snr_cdf_fading_eta2(double rho, const CirParams& cir, double psi) {
    if (!(rho >= 0.0)) throw std::domain_error("snr_cdf_fading_eta2: rho must be >= 0");
    const double rt = rho / psi * cir.theta;
    return rt / (1.0 + rt);
}

double conn_prob_fading_eta2(const SnrThreshold& thr, const CirParams& cir, double psi) {
    return 1.0 / (1.0 + thr.rho_th / psi * cir.theta);
}

double snr_pdf_fading_eta4(double rho, const CirParams& cir, double psi) {
    if (!(rho > 0.0)) throw std::domain_error("snr_pdf_fading_eta4: rho must be > 0");
    const double th = cir.theta;
    const double r = rho / psi;
    const double eps = 2.0 * th * th * r;
    double f;
    if (eps < 0.02) {
        // the direct form cancels to O(eps^2) here; use the asymptotic
        // series f = theta^2 [2 - 12 eps + 90 eps^2 - ...] instead
        double term = 2.0, sum = 2.0;
        for (int n = 2; n < 40; ++n) {
            const double next = term * (-(2.0 * n - 1.0) * (2.0 * n) / (2.0 * n - 2.0)) * eps;
            if (std::fabs(next) >= std::fabs(term)) break;
            term = next;
            sum += term;
            if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
        }
        f = th * th * sum;
    } else {
        const double sqrt_r = std::sqrt(r);
        const double arg = 1.0 / (2.0 * th * sqrt_r);
        const double num = 1.7724538509055160272981674833411452 * sf::erfc_scaled(arg) * (1.0 + eps) -
                           2.0 * th * sqrt_r;
        f = num / (8.0 * th * th * th * r * r * sqrt_r);
    }
    return f / psi;
}

} // namespace linkdyn::analytic
