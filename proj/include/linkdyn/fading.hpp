#pragma once

#include "linkdyn/rng.hpp"
#include "linkdyn/sample_path.hpp"

#include <cstddef>
#include <vector>

namespace linkdyn::fading {

/// Autoregressive Rayleigh fading generator targeting the Jakes
/// autocovariance J0(2 pi nu_max lag) of the complex gain (so the power gain
/// has autocovariance J0^2).
struct FadingModel {
    double nu_max;          ///< maximum Doppler shift [Hz], >= 0
    double dt;              ///< sampling interval [s], > 0
    int ar_order = 50;      ///< AR model order, >= 1
    double bias_eps = 1e-9; ///< diagonal loading for the near-singular Yule-Walker system

    FadingModel(double nu_max_, double dt_, int ar_order_ = 50, double bias_eps_ = 1e-9);

    /// True when the Doppler spectrum is not oversampled (2 nu_max dt >= 1);
    /// a warning condition.
    bool nyquist_warning() const { return 2.0 * nu_max * dt >= 1.0; }
};

struct ArFit {
    std::vector<double> coeffs;  ///< a_1..a_p
    double innovation_variance;  ///< >= 0, <= r(0)
    bool constant_gain;          ///< nu_max = 0 degenerate case
    double r0;                   ///< loaded zero-lag autocorrelation
};

/// Solves the loaded Yule-Walker system for r(m) = J0(2 pi nu_max m dt) by
/// Levinson-Durbin. nu_max = 0 yields the constant-gain model. Throws
/// numerical_error if the recursion loses positive definiteness.
ArFit fit_ar(const FadingModel& model);

struct ComplexPath {
    std::vector<double> re, im;
};

/// Correlated complex gain h (in-phase/quadrature each variance 1/2) after a
/// burn-in of 10 * ar_order samples.
ComplexPath complex_gain_path(const FadingModel& model, const ArFit& fit, std::size_t n_steps,
                              Philox4x32& rng);

/// Power gain G = |h|^2; marginal Exp(1).
sim::SamplePath gain_path(const FadingModel& model, const ArFit& fit, std::size_t n_steps,
                          Philox4x32& rng);

/// i.i.d. Exp(1) gains, for checks that only need the marginal law.
std::vector<double> gain_iid(std::size_t n, Philox4x32& rng);

} // namespace linkdyn::fading
