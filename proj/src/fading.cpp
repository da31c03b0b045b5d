#include "linkdyn/fading.hpp"

#include "linkdyn/errors.hpp"
#include "linkdyn/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace linkdyn::fading {

FadingModel::FadingModel(double nu_max_, double dt_, int ar_order_, double bias_eps_)
    : nu_max(nu_max_), dt(dt_), ar_order(ar_order_), bias_eps(bias_eps_) {
    if (!(nu_max >= 0.0)) throw std::invalid_argument("FadingModel: nu_max must be >= 0");
    if (!(dt > 0.0)) throw std::invalid_argument("FadingModel: dt must be > 0");
    if (ar_order < 1) throw std::invalid_argument("FadingModel: ar_order must be >= 1");
    if (!(bias_eps >= 0.0)) throw std::invalid_argument("FadingModel: bias_eps must be >= 0");
}

ArFit fit_ar(const FadingModel& model) {
    const int p = model.ar_order;
    std::vector<double> r(p + 1);
    for (int m = 0; m <= p; ++m) {
        r[m] = sf::bessel_j0(2.0 * 3.14159265358979323846 * model.nu_max * m * model.dt);
    }
    if (model.nu_max == 0.0) {
        return ArFit{{}, 0.0, true, 1.0};
    }
    r[0] += model.bias_eps;

    // Levinson-Durbin on the loaded sequence
    std::vector<double> a(p, 0.0);
    double e = r[0];
    for (int m = 1; m <= p; ++m) {
        double acc = r[m];
        for (int j = 1; j < m; ++j) acc -= a[j - 1] * r[m - j];
        const double kappa = acc / e;
        if (!(std::fabs(kappa) < 1.0)) {
            throw numerical_error(
                "fit_ar: Yule-Walker system lost positive definiteness; "
                "increase bias_eps or reduce ar_order",
                kappa, e);
        }
        std::vector<double> next(a.begin(), a.begin() + m);
        next[m - 1] = kappa;
        for (int j = 1; j < m; ++j) next[j - 1] = a[j - 1] - kappa * a[m - 1 - j];
        std::copy(next.begin(), next.begin() + m, a.begin());
        e *= 1.0 - kappa * kappa;
        if (!(e > 0.0)) {
            throw numerical_error(
                "fit_ar: nonpositive innovation variance; increase bias_eps or reduce ar_order",
                e, model.bias_eps);
        }
    }
    return ArFit{std::move(a), e, false, r[0]};
}

ComplexPath complex_gain_path(const FadingModel& model, const ArFit& fit, std::size_t n_steps,
                              Philox4x32& rng) {
    ComplexPath out;
    out.re.reserve(n_steps);
    out.im.reserve(n_steps);
    if (fit.constant_gain) {
        // single complex Gaussian draw held for the whole path
        const double s = std::sqrt(0.5);
        const double re = s * rng.next_normal();
        const double im = s * rng.next_normal();
        out.re.assign(n_steps, re);
        out.im.assign(n_steps, im);
        return out;
    }
    const int p = model.ar_order;
    const std::size_t burn_in = static_cast<std::size_t>(10) * p;
    const double innov_sd = std::sqrt(0.5 * fit.innovation_variance);
    // ring buffer, head points at the most recent sample
    std::vector<double> hist_re(p, 0.0), hist_im(p, 0.0);
    int head = 0;
    for (std::size_t i = 0; i < burn_in + n_steps; ++i) {
        double re = innov_sd * rng.next_normal();
        double im = innov_sd * rng.next_normal();
        int idx = head;
        for (int j = 0; j < p; ++j) {
            re += fit.coeffs[j] * hist_re[idx];
            im += fit.coeffs[j] * hist_im[idx];
            if (--idx < 0) idx = p - 1;
        }
        if (++head >= p) head = 0;
        hist_re[head] = re;
        hist_im[head] = im;
        if (i >= burn_in) {
            out.re.push_back(re);
            out.im.push_back(im);
        }
    }
    return out;
}

sim::SamplePath gain_path(const FadingModel& model, const ArFit& fit, std::size_t n_steps,
                          Philox4x32& rng) {
    const ComplexPath h = complex_gain_path(model, fit, n_steps, rng);
    sim::SamplePath path{model.dt, 0, sim::PathKind::gain, {}, {}};
    path.values.reserve(n_steps);
    for (std::size_t i = 0; i < n_steps; ++i) {
        path.values.push_back(h.re[i] * h.re[i] + h.im[i] * h.im[i]);
    }
    return path;
}

std::vector<double> gain_iid(std::size_t n, Philox4x32& rng) {
    std::vector<double> g(n);
    for (double& v : g) v = rng.next_exponential();
    return g;
}

} // namespace linkdyn::fading
