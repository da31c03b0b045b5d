#include "linkdyn/analytic.hpp"

#include "linkdyn/procsim.hpp"
#include "linkdyn/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace linkdyn;
namespace an = linkdyn::analytic;

namespace {
const MobilityParams kMob(1.0, 100.0);
const CirParams kCir = derive_cir(kMob);
const PathLossParams kPl2(2, 1);

void check_rel(double got, double want, double tol) {
    CHECK(std::fabs(got - want) <= tol * std::fabs(want));
}
} // namespace

TEST_CASE("z_bivariate_cdf: frozen value and independence limit") {
    // 40-digit reference for theta=200, k=2, lag=0.5, z_s=z_t=200
    const an::SeriesResult s = an::z_bivariate_cdf(200.0, 200.0, 0.5, kCir);
    check_rel(s.value, 0.454179450592782357, 1e-10);
    CHECK(s.terms_used > 1);

    // lag = 25 s = 50/k: the pair decouples into the product of marginals
    const an::SeriesResult far = an::z_bivariate_cdf(200.0, 200.0, 25.0, kCir);
    check_rel(far.value, 0.399576400893728049, 1e-9);
    const double product = an::z_stationary_cdf(200.0, kCir) * an::z_stationary_cdf(200.0, kCir);
    CHECK(std::fabs(far.value - product) < 1e-9);

    // degenerate coordinates
    CHECK(an::z_bivariate_cdf(0.0, 200.0, 0.5, kCir).value == 0.0);
    CHECK(an::z_bivariate_cdf(200.0, 0.0, 0.5, kCir).value == 0.0);
    CHECK_THROWS_AS(an::z_bivariate_cdf(-1.0, 1.0, 0.5, kCir), std::domain_error);
    CHECK_THROWS_AS(an::z_bivariate_cdf(1.0, 1.0, 0.0, kCir), std::domain_error);
}

TEST_CASE("z_bivariate_cdf agrees with pair Monte Carlo") {
    Philox4x32 rng(314, 40);
    const int n = 200000;
    const double lag = 0.4;
    const double za = 120.0, zb = 350.0;
    int hits = 0;
    for (int i = 0; i < n; ++i) {
        const double zt = kCir.theta * rng.next_exponential();
        const double zs = sim::z_transition_sample_exact(zt, lag, kMob, rng);
        if (zt <= za && zs <= zb) ++hits;
    }
    const double p = an::z_bivariate_cdf(zb, za, lag, kCir).value;
    const double sigma = std::sqrt(p * (1.0 - p) / n);
    CHECK(std::fabs(static_cast<double>(hits) / n - p) < 4.0 * sigma);
}

TEST_CASE("snr_bivariate_cdf equals the inclusion-exclusion of the Z series") {
    for (double lag : {0.1, 0.5, 2.0}) {
        for (double rho_s : {0.002, 0.005, 0.02}) {
            for (double rho_t : {0.002, 0.01}) {
                const double xs = std::pow(rho_s, -1.0); // beta = 1 for eta = 2
                const double xt = std::pow(rho_t, -1.0);
                const double s = an::z_bivariate_cdf(xs, xt, lag, kCir).value;
                const double expect =
                    1.0 - an::z_stationary_cdf(xs, kCir) - an::z_stationary_cdf(xt, kCir) + s;
                const double got = an::snr_bivariate_cdf(rho_s, rho_t, lag, kCir, kPl2).value;
                // both routes truncate at the series rel_tol (1e-10)
                CHECK(std::fabs(got - expect) < 1e-9);
            }
        }
    }
}

TEST_CASE("snr_bivariate_cdf: frozen joint value") {
    // rho_s = rho_t = 1/200, eta=2, lag=0.5: reference 0.189938332935667001
    const an::SeriesResult r = an::snr_bivariate_cdf(0.005, 0.005, 0.5, kCir, kPl2);
    check_rel(r.value, 0.189938332935667001, 1e-10);
    CHECK(r.terms_used > 1);
}

TEST_CASE("snr_bivariate_cdf limits: independence and comonotonicity") {
    // lag = 50 tau: product of the univariate cdfs
    for (double rho_s : {0.003, 0.01}) {
        for (double rho_t : {0.004, 0.02}) {
            const double joint = an::snr_bivariate_cdf(rho_s, rho_t, 50.0, kCir, kPl2).value;
            const double product = an::snr_cdf_nofading(rho_s, kCir, kPl2) *
                                   an::snr_cdf_nofading(rho_t, kCir, kPl2);
            CHECK(std::fabs(joint - product) < 1e-6);
        }
    }

    // lag = tau/1e4: comonotone limit min(F_s, F_t); the series needs many
    // terms here, so widen the cap
    an::SeriesControl ctrl;
    ctrl.max_terms = 300000;
    ctrl.rel_tol = 1e-7;
    for (double rho_s : {0.004, 0.008}) {
        const double rho_t = 0.006;
        const double joint = an::snr_bivariate_cdf(rho_s, rho_t, 1e-4, kCir, kPl2, ctrl).value;
        const double expect = std::min(an::snr_cdf_nofading(rho_s, kCir, kPl2),
                                       an::snr_cdf_nofading(rho_t, kCir, kPl2));
        CHECK(std::fabs(joint - expect) < 1e-3);
    }
}

TEST_CASE("snr_bivariate_cdf stays within the Frechet bounds") {
    for (double lag : {0.05, 0.3, 1.0, 5.0}) {
        for (double rho : {0.002, 0.005, 0.01, 0.05}) {
            const double f = an::snr_cdf_nofading(rho, kCir, kPl2);
            const double joint = an::snr_bivariate_cdf(rho, rho, lag, kCir, kPl2).value;
            CHECK(joint <= f + 1e-12);
            CHECK(joint >= std::max(0.0, 2.0 * f - 1.0) - 1e-12);
        }
    }
}

TEST_CASE("snr_bivariate_cdf matches a 2e5-pair Monte Carlo band") {
    Philox4x32 rng(1234, 41);
    const int n = 200000;
    const double lag = 0.5;
    const double rho_a = 0.005, rho_b = 0.01;
    int hits = 0;
    for (int i = 0; i < n; ++i) {
        const double zt = kCir.theta * rng.next_exponential();
        const double zs = sim::z_transition_sample_exact(zt, lag, kMob, rng);
        const double nt = 1.0 / zt, ns = 1.0 / zs;
        if (ns <= rho_a && nt <= rho_b) ++hits;
    }
    const double p = an::snr_bivariate_cdf(rho_a, rho_b, lag, kCir, kPl2).value;
    const double sigma = std::sqrt(p * (1.0 - p) / n);
    CHECK(std::fabs(static_cast<double>(hits) / n - p) < 4.0 * sigma);
}

TEST_CASE("series reports non-convergence instead of returning garbage") {
    an::SeriesControl tiny;
    tiny.max_terms = 3;
    CHECK_THROWS_AS(an::snr_bivariate_cdf(0.005, 0.005, 0.01, kCir, kPl2, tiny), numerical_error);
}

TEST_CASE("snr_bivariate_pdf: closed-form kernel identity") {
    // f(rho_s, rho_t) = beta^2 (rho_s rho_t)^{-beta-1} f_Z(x_s, x_t)
    for (double lag : {0.1, 0.5, 2.0}) {
        for (double rho_s : {0.003, 0.01, 0.04}) {
            for (double rho_t : {0.005, 0.02}) {
                const double xs = 1.0 / rho_s, xt = 1.0 / rho_t;
                const double fz = an::z_transition_pdf(xs, xt, lag, kCir) *
                                  an::z_stationary_pdf(xt, kCir);
                const double expect = fz / (rho_s * rho_s * rho_t * rho_t);
                const double got = an::snr_bivariate_pdf(rho_s, rho_t, lag, kCir, kPl2).value;
                check_rel(got, expect, 1e-10);
            }
        }
    }
}

TEST_CASE("snr_bivariate_pdf marginalizes to the univariate pdf") {
    const double lag = 0.5;
    for (double rho_t : {0.005, 0.02}) {
        // integrate over rho_s in log space
        auto g = [&](double y) {
            const double rho_s = std::exp(y);
            return an::snr_bivariate_pdf(rho_s, rho_t, lag, kCir, kPl2).value * rho_s;
        };
        const auto r = integrate_segments(g, {-16.0, -9.0, -6.0, -3.0, 0.0, 30.0});
        const double expect = an::snr_pdf_nofading(rho_t, kCir, kPl2);
        CHECK(std::fabs(r.value - expect) <= 1e-5 * expect);
    }
}

TEST_CASE("snr_bivariate_pdf equals the mixed finite difference of the cdf") {
    const double lag = 0.5;
    for (double rho_s : {0.004, 0.02}) {
        for (double rho_t : {0.006, 0.03}) {
            const double hs = 1e-4 * rho_s, ht = 1e-4 * rho_t;
            auto F = [&](double a, double b) {
                return an::snr_bivariate_cdf(a, b, lag, kCir, kPl2).value;
            };
            const double fd = (F(rho_s + hs, rho_t + ht) - F(rho_s + hs, rho_t - ht) -
                               F(rho_s - hs, rho_t + ht) + F(rho_s - hs, rho_t - ht)) /
                              (4.0 * hs * ht);
            const double pdf = an::snr_bivariate_pdf(rho_s, rho_t, lag, kCir, kPl2).value;
            CHECK(std::fabs(fd - pdf) <= 1e-4 * std::fabs(pdf));
        }
    }
}

TEST_CASE("snr_bivariate_pdf factorizes at large lag") {
    for (double rho_s : {0.004, 0.02}) {
        for (double rho_t : {0.006, 0.03}) {
            const double joint = an::snr_bivariate_pdf(rho_s, rho_t, 50.0, kCir, kPl2).value;
            const double product = an::snr_pdf_nofading(rho_s, kCir, kPl2) *
                                   an::snr_pdf_nofading(rho_t, kCir, kPl2);
            check_rel(joint, product, 1e-6);
        }
    }
}

TEST_CASE("bivariate series respects psi scaling") {
    const PathLossParams scaled(2, 1, 3.0);
    for (double rho_s : {0.01, 0.05}) {
        const double rho_t = 0.02;
        check_rel(an::snr_bivariate_cdf(3.0 * rho_s, 3.0 * rho_t, 0.5, kCir, scaled).value,
                  an::snr_bivariate_cdf(rho_s, rho_t, 0.5, kCir, kPl2).value, 1e-10);
        check_rel(an::snr_bivariate_pdf(3.0 * rho_s, 3.0 * rho_t, 0.5, kCir, scaled).value,
                  an::snr_bivariate_pdf(rho_s, rho_t, 0.5, kCir, kPl2).value / 9.0, 1e-10);
    }
}
