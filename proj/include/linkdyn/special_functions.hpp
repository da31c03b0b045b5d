#pragma once

namespace linkdyn::sf {

/// log Gamma(x) for x > 0 (Lanczos; no global state, unlike std::lgamma).
double log_gamma(double x);

/// Bessel J0. Evaluated by the exponentially convergent midpoint rule on
/// the cosine integral representation; full double accuracy for |x| <~ 1e3.
double bessel_j0(double x);

/// log(exp(-x) I0(x)) for x >= 0. Power series below x = 19, asymptotic
/// expansion above; stable for arguments far beyond exp overflow.
double log_bessel_i0_scaled(double x);

/// exp(-x) I0(x) for x >= 0.
double bessel_i0_scaled(double x);

/// exp(x^2) erfc(x) for x >= 0.
double erfc_scaled(double x);

/// Regularized lower incomplete gamma P(a,x) = gamma(a,x)/Gamma(a),
/// a > 0, x >= 0. Series for x < a+1, continued fraction otherwise.
double lower_incomplete_gamma_regularized(double a, double x);

/// Standard normal cdf.
double normal_cdf(double x);

/// Kolmogorov-Smirnov tail probability Q(lambda) = 2 sum (-1)^{j-1} e^{-2 j^2 lambda^2}.
double kolmogorov_q(double lambda);

} // namespace linkdyn::sf
