#include "linkdyn/analytic.hpp"

#include "linkdyn/procsim.hpp"
#include "linkdyn/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

using namespace linkdyn;
namespace an = linkdyn::analytic;

namespace {
const MobilityParams kMob(1.0, 100.0);
const CirParams kCir = derive_cir(kMob); // k=2, theta=200, sigma=2 sqrt(200)

void check_rel(double got, double want, double tol) {
    CHECK(std::fabs(got - want) <= tol * std::fabs(want));
}
} // namespace

TEST_CASE("ou_moments: initial condition, relaxation, stationarity") {
    const an::OuMoments at0 = an::ou_moments(0.0, 5.0, kMob);
    CHECK(at0.mean == 5.0);
    CHECK(at0.variance == 0.0);

    // t = 100 tau is numerically the steady state: mean -> mu, var -> D tau / 2
    const an::OuMoments late = an::ou_moments(100.0, 123.0, kMob);
    CHECK(std::fabs(late.mean) < 1e-30);
    CHECK(late.variance == doctest::Approx(50.0).epsilon(1e-12));

    // t = tau from s0 = mu; variance frozen from the closed form
    const an::OuMoments mid = an::ou_moments(1.0, 0.0, kMob);
    CHECK(mid.mean == 0.0);
    CHECK(mid.variance == doctest::Approx(43.2332358381693654).epsilon(1e-14));

    CHECK_THROWS_AS(an::ou_moments(-1.0, 0.0, kMob), std::domain_error);
}

TEST_CASE("ou_moments agrees with exact-step Monte Carlo") {
    Philox4x32 rng(97, 21);
    const double s0 = 3.0, dt = 1.0;
    const int n = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double s = sim::ou_step_exact(s0, dt, kMob, rng);
        sum += s;
        sum2 += s * s;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    const an::OuMoments mom = an::ou_moments(dt, s0, kMob);
    const double mean_se = std::sqrt(mom.variance / n);
    const double var_se = mom.variance * std::sqrt(2.0 / n);
    CHECK(std::fabs(mean - mom.mean) < 5.0 * mean_se);
    CHECK(std::fabs(var - mom.variance) < 5.0 * var_se);
}

TEST_CASE("ou_autocov") {
    CHECK(an::ou_autocov(0.0, kMob) == doctest::Approx(50.0).epsilon(1e-14));
    CHECK(an::ou_autocov(1.0, kMob) == doctest::Approx(18.3939720585721161).epsilon(1e-13));
    CHECK(an::ou_autocov(200.0, kMob) < 1e-30);
    CHECK_THROWS_AS(an::ou_autocov(-0.1, kMob), std::domain_error);
}

TEST_CASE("z_transition_pdf matches high-precision references") {
    // tau=1, D=100, lag=0.2, conditioning z_t = 3000
    struct Ref { double z_s, f; };
    const Ref refs[] = {
        {0.0, 8.6193125175419812e-16},
        {500.0, 5.15950005652245994e-7},
        {1500.0, 0.000474018130078763359},
        {2000.0, 0.000777189079551026323},
        {3000.0, 0.000157455319876917873},
        {5000.0, 2.41944334544261967e-8},
    };
    for (const Ref& r : refs) {
        check_rel(an::z_transition_pdf(r.z_s, 3000.0, 0.2, kCir), r.f, 1e-12);
    }
}

TEST_CASE("z_transition_pdf: zero noncentrality reduces to an exponential") {
    const TransitionCoefficients tc(kCir, 0.37);
    for (double z_s : {0.0, 10.0, 150.0, 900.0}) {
        check_rel(an::z_transition_pdf(z_s, 0.0, 0.37, kCir), tc.c * std::exp(-z_s * tc.c), 1e-13);
    }
}

TEST_CASE("z_transition_pdf converges to the stationary exponential at long lags") {
    for (double z_s : {1.0, 50.0, 200.0, 800.0, 2000.0}) {
        const double trans = an::z_transition_pdf(z_s, 700.0, 10.0, kCir);
        const double stat = an::z_stationary_pdf(z_s, kCir);
        CHECK(std::fabs(trans - stat) <= 1e-6 * stat);
    }
}

TEST_CASE("z_transition_pdf integrates to one") {
    auto f = [](double z) { return an::z_transition_pdf(z, 3000.0, 0.2, kCir); };
    const auto r = integrate_segments(f, {0.0, 500.0, 1000.0, 2000.0, 3000.0, 5000.0, 12000.0});
    CHECK(std::fabs(r.value - 1.0) < 1e-8);
    CHECK_THROWS_AS(an::z_transition_pdf(1.0, 1.0, 0.0, kCir), std::domain_error);
    CHECK_THROWS_AS(an::z_transition_pdf(1.0, 1.0, -0.5, kCir), std::domain_error);
    CHECK_THROWS_AS(an::z_transition_pdf(-1.0, 1.0, 0.5, kCir), std::domain_error);
}

TEST_CASE("stationary squared-distance law") {
    CHECK(an::z_stationary_pdf(0.0, kCir) == doctest::Approx(0.005).epsilon(1e-15));
    check_rel(an::z_stationary_pdf(200.0, kCir), std::exp(-1.0) / 200.0, 1e-14);
    CHECK(an::z_stationary_cdf(0.0, kCir) == 0.0);
    check_rel(an::z_stationary_cdf(200.0, kCir), 1.0 - std::exp(-1.0), 1e-14);
    CHECK(an::z_stationary_cdf(1e9, kCir) == doctest::Approx(1.0));
}

TEST_CASE("z_autocov") {
    CHECK(an::z_autocov(0.0, kCir) == doctest::Approx(200.0 * 200.0).epsilon(1e-14));
    // lag = tau/2 means k lag = 1
    check_rel(an::z_autocov(0.5, kCir), 200.0 * 200.0 * std::exp(-1.0), 1e-14);
    // tau=0.1: normalized curve is exp(-20 lag)
    const CirParams fast = derive_cir(MobilityParams(0.1, 100.0));
    check_rel(an::z_autocov(0.05, fast) / an::z_autocov(0.0, fast), std::exp(-1.0), 1e-13);
}

TEST_CASE("distance process: Rice transition and Rayleigh steady state") {
    // zero line-of-sight component: Rayleigh(b) density
    const TransitionCoefficients tc(kCir, 0.3);
    const double b2 = tc.b() * tc.b();
    for (double r : {0.5, 2.0, 10.0, 25.0}) {
        check_rel(an::r_transition_pdf(r, 0.0, 0.3, kCir), r / b2 * std::exp(-r * r / (2.0 * b2)),
                  1e-13);
    }

    // change of variables r = sqrt(z): f_R(r_s|r_t) = 2 r_s f_Z(r_s^2|r_t^2)
    for (double lag : {0.05, 0.4, 2.0}) {
        for (double r_s : {0.1, 3.0, 12.0, 30.0, 60.0}) {
            for (double r_t : {0.0, 5.0, 40.0}) {
                const double lhs = an::r_transition_pdf(r_s, r_t, lag, kCir);
                const double rhs = 2.0 * r_s * an::z_transition_pdf(r_s * r_s, r_t * r_t, lag, kCir);
                if (rhs > 1e-300) check_rel(lhs, rhs, 1e-12);
            }
        }
    }

    // long lag approaches the Rayleigh steady state
    for (double r : {1.0, 8.0, 15.0, 30.0}) {
        check_rel(an::r_transition_pdf(r, std::sqrt(3000.0), 10.0, kCir),
                  an::r_stationary_pdf(r, kCir), 1e-5);
    }

    CHECK(an::r_stationary_pdf(0.0, kCir) == 0.0);
    const auto norm = integrate_segments([](double r) { return an::r_stationary_pdf(r, kCir); },
                                         {0.0, 10.0, 30.0, 120.0});
    CHECK(std::fabs(norm.value - 1.0) < 1e-10);

    // mode at sqrt(theta/2): the stationary point really is the peak
    const double mode = std::sqrt(0.5 * kCir.theta);
    const double fm = an::r_stationary_pdf(mode, kCir);
    for (double d : {-0.5, -0.1, 0.1, 0.5}) {
        CHECK(an::r_stationary_pdf(mode + d, kCir) < fm);
    }
}

TEST_CASE("SNR law without fading: cdf/pdf consistency and limits") {
    const PathLossParams pl4(4, 1);
    CHECK(an::snr_cdf_nofading(1e12, kCir, pl4) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(an::snr_cdf_nofading(1e-12, kCir, pl4) < 1e-12);

    // centered finite difference of the cdf matches the pdf on a log grid
    for (int i = 0; i <= 40; ++i) {
        const double rho = std::pow(10.0, -6.0 + 8.0 * i / 40.0);
        const double h = 1e-4 * rho;
        const double fd = (an::snr_cdf_nofading(rho + h, kCir, pl4) -
                           an::snr_cdf_nofading(rho - h, kCir, pl4)) / (2.0 * h);
        const double pdf = an::snr_pdf_nofading(rho, kCir, pl4);
        if (pdf > 1e-300) {
            CHECK(std::fabs(fd - pdf) <= 1e-6 * std::max(pdf, 1.0));
        }
    }
    CHECK_THROWS_AS(an::snr_pdf_nofading(0.0, kCir, pl4), std::domain_error);
    CHECK_THROWS_AS(an::snr_cdf_nofading(-1.0, kCir, pl4), std::domain_error);
}

TEST_CASE("SNR pdf without fading integrates to one (eta = 4)") {
    const PathLossParams pl4(4, 1);
    // integrate in log space: rho f(rho) dy with rho = e^y handles the heavy tail
    auto g = [&](double y) {
        const double rho = std::exp(y);
        return an::snr_pdf_nofading(rho, kCir, pl4) * rho;
    };
    const auto r = integrate_segments(g, {-40.0, -20.0, -12.0, -6.0, 0.0, 20.0, 60.0});
    CHECK(std::fabs(r.value - 1.0) < 1e-6);
}

TEST_CASE("connectivity probability without fading") {
    const PathLossParams pl2(2, 1);
    // rho_th -> 0 gives certain connectivity
    CHECK(an::conn_prob_nofading(SnrThreshold(0.0, pl2), kCir, pl2) == 1.0);

    // hard-connection identity: 1 - F(rho_th) = P(Z <= r0^2)
    for (double rho_th : {0.25, 1.0, 4.0}) {
        const SnrThreshold thr(rho_th, pl2);
        const double conn = an::conn_prob_nofading(thr, kCir, pl2);
        const double via_z = an::z_stationary_cdf(thr.r0 * thr.r0, kCir);
        CHECK(std::fabs(conn - via_z) <= 1e-12 * via_z);
    }

    // frozen value plus a Monte-Carlo oracle band
    const SnrThreshold unit(1.0, pl2);
    const double conn = an::conn_prob_nofading(unit, kCir, pl2);
    check_rel(conn, 0.00498752080731768665, 1e-14);
    Philox4x32 rng(2025, 30);
    const int n = 1000000;
    int hits = 0;
    for (int i = 0; i < n; ++i) {
        if (kCir.theta * rng.next_exponential() <= unit.r0 * unit.r0) ++hits;
    }
    const double sigma = std::sqrt(conn * (1.0 - conn) / n);
    CHECK(std::fabs(static_cast<double>(hits) / n - conn) < 3.0 * sigma);

    // nonincreasing in rho_th
    double prev = 1.0;
    for (double rho_th : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        const double p = an::conn_prob_nofading(SnrThreshold(rho_th, pl2), kCir, pl2);
        CHECK(p <= prev);
        CHECK(p >= 0.0);
        prev = p;
    }
}

TEST_CASE("partial first moment of the SNR grows without bound (eta = 2)") {
    const PathLossParams pl2(2, 1);
    auto integrand = [&](double y) {
        const double rho = std::exp(y);
        return an::snr_pdf_nofading(rho, kCir, pl2) * rho * rho; // rho f(rho) drho = e^{2y} f dy
    };
    const double t1 = integrate_segments(integrand, {-25.0, -10.0, -5.0, 0.0, std::log(1e3)}).value;
    const double t2 = t1 + integrate(integrand, std::log(1e3), std::log(1e6)).value;
    CHECK(t2 >= 1.1 * t1);
}

TEST_CASE("psi rescales the no-fading SNR law consistently") {
    const PathLossParams pl(2, 1);
    const PathLossParams pl_scaled(2, 1, 2.5);
    for (double rho : {0.003, 0.1, 2.0}) {
        check_rel(an::snr_cdf_nofading(rho * 2.5, kCir, pl_scaled),
                  an::snr_cdf_nofading(rho, kCir, pl), 1e-13);
        check_rel(an::snr_pdf_nofading(rho * 2.5, kCir, pl_scaled),
                  an::snr_pdf_nofading(rho, kCir, pl) / 2.5, 1e-13);
    }
}

TEST_CASE("fading SNR closed form, eta = 2") {
    const PathLossParams pl2(2, 1);
    // median at 1/theta
    check_rel(an::snr_cdf_fading_eta2(1.0 / kCir.theta, kCir), 0.5, 1e-14);
    // connectivity identities
    CHECK(an::conn_prob_fading_eta2(SnrThreshold(0.0, pl2), kCir) == 1.0);
    for (double rho_th : {0.5, 1.0, 2.0}) {
        const SnrThreshold thr(rho_th, pl2);
        // complementarity is exact up to one ulp of the subtraction from 1
        CHECK(std::fabs(an::conn_prob_fading_eta2(thr, kCir) -
                        (1.0 - an::snr_cdf_fading_eta2(rho_th, kCir))) <= 1e-15);
        check_rel(an::conn_prob_fading_eta2(thr, kCir), 1.0 / (1.0 + rho_th * kCir.theta), 1e-14);
    }
    // pdf is the derivative of the cdf
    for (double rho : {1e-4, 0.01, 0.3}) {
        const double h = 1e-5 * std::max(rho, 1e-3);
        const double fd = (an::snr_cdf_fading_eta2(rho + h, kCir) -
                           an::snr_cdf_fading_eta2(rho - h, kCir)) / (2.0 * h);
        check_rel(an::snr_pdf_fading_eta2(rho, kCir), fd, 1e-6);
    }
}

TEST_CASE("fading SNR closed form eta = 4 matches references across branches") {
    struct Ref { double rho, f; };
    const Ref refs[] = {
        {1e-8, 79618.2869500133778},  // asymptotic branch
        {1e-7, 76374.599062863042},   // asymptotic branch
        {1e-6, 55251.8112126444615},  // direct branch
        {1e-5, 15119.1033350766032},
        {1e-4, 1295.09896023721497},
        {1e-3, 58.7783638243407809},
        {1e-2, 2.09461946087762913},
        {0.1, 0.0688254234167875174},
        {1.0, 0.00220310875156833297},
        {10.0, 6.99375214678574577e-5},
        {1000.0, 7.00498915185397653e-8},
    };
    for (const Ref& r : refs) {
        check_rel(an::snr_pdf_fading_eta4(r.rho, kCir), r.f, 1e-11);
    }
    // continuity across the branch switch at eps = 2 theta^2 rho = 0.02
    const double rho_switch = 0.02 / (2.0 * kCir.theta * kCir.theta);
    check_rel(an::snr_pdf_fading_eta4(rho_switch * 0.999, kCir),
              an::snr_pdf_fading_eta4(rho_switch * 1.001, kCir), 1e-3);
    CHECK_THROWS_AS(an::snr_pdf_fading_eta4(0.0, kCir), std::domain_error);
}

TEST_CASE("quadrature fading pdf agrees with the closed forms to 1e-8") {
    const PathLossParams pl2(2, 1);
    const PathLossParams pl4(4, 1);
    QuadratureControl qc;
    qc.rel_tol = 1e-11;
    for (int i = 0; i <= 30; ++i) {
        const double rho = std::pow(10.0, -3.0 + 6.0 * i / 30.0);
        check_rel(an::snr_pdf_fading(rho, kCir, pl2, qc), an::snr_pdf_fading_eta2(rho, kCir), 1e-8);
        check_rel(an::snr_pdf_fading(rho, kCir, pl4, qc), an::snr_pdf_fading_eta4(rho, kCir), 1e-8);
    }
    CHECK_THROWS_AS(an::snr_pdf_fading(0.0, kCir, pl2), std::domain_error);
}

TEST_CASE("quadrature fading pdf matches references for eta = 3") {
    const PathLossParams pl3(3, 1);
    QuadratureControl qc;
    qc.rel_tol = 1e-11;
    struct Ref { double rho, f; };
    const Ref refs[] = {
        {1e-6, 3712.5270272057739},
        {1e-4, 1586.94472388267565},
        {1e-2, 5.63962671343853359},
        {1.0, 0.00298939004286715856},
        {100.0, 1.39629671465353865e-6},
    };
    for (const Ref& r : refs) {
        check_rel(an::snr_pdf_fading(r.rho, kCir, pl3, qc), r.f, 1e-8);
    }
}

TEST_CASE("fading pdf normalization for eta in {2, 5/2, 3, 4}") {
    for (const auto& [p, q] : std::vector<std::pair<long, long>>{{2, 1}, {5, 2}, {3, 1}, {4, 1}}) {
        const PathLossParams pl(p, q);
        auto g = [&](double y) {
            const double rho = std::exp(y);
            return an::snr_pdf_fading(rho, kCir, pl) * rho;
        };
        // the tail decays like e^{-2qy/p}, so stretch the upper knot with eta
        const double y_hi = 25.0 * pl.eta();
        const auto r = integrate_segments(g, {-30.0, -15.0, -8.0, 0.0, 10.0, y_hi});
        CHECK(std::fabs(r.value - 1.0) < 1e-6);
    }
}

TEST_CASE("eta = 4 fading pdf integrates to one") {
    auto g = [&](double y) {
        const double rho = std::exp(y);
        return an::snr_pdf_fading_eta4(rho, kCir) * rho;
    };
    const auto r = integrate_segments(g, {-40.0, -20.0, -12.0, -6.0, 0.0, 30.0, 100.0});
    CHECK(std::fabs(r.value - 1.0) < 1e-6);
}

TEST_CASE("Chapman-Kolmogorov for the squared-distance transition kernel") {
    const double lag1 = 0.1, lag2 = 0.2, z_t = 1000.0;
    for (double z_s : {200.0, 800.0, 2000.0}) {
        auto integrand = [&](double z_m) {
            return an::z_transition_pdf(z_s, z_m, lag2, kCir) *
                   an::z_transition_pdf(z_m, z_t, lag1, kCir);
        };
        const auto composed =
            integrate_segments(integrand, {0.0, 250.0, 500.0, 1000.0, 2000.0, 4000.0, 9000.0});
        const double direct = an::z_transition_pdf(z_s, z_t, lag1 + lag2, kCir);
        CHECK(std::fabs(composed.value - direct) <= 1e-5 * direct);
    }
}

TEST_CASE("stationary law is a fixed point of the transition kernel") {
    for (double lag : {0.05, 0.5, 5.0}) {
        for (double z_s : {10.0, 100.0, 500.0, 1500.0}) {
            auto integrand = [&](double z_t) {
                return an::z_transition_pdf(z_s, z_t, lag, kCir) * an::z_stationary_pdf(z_t, kCir);
            };
            const auto r =
                integrate_segments(integrand, {0.0, 100.0, 400.0, 1200.0, 3000.0, 8000.0});
            const double expect = an::z_stationary_pdf(z_s, kCir);
            CHECK(std::fabs(r.value - expect) <= 1e-6 * expect);
        }
    }
}

TEST_CASE("DistributionCurve invariants") {
    an::DistributionCurve ok;
    ok.abscissa = {0.0, 1.0, 2.0};
    ok.values = {0.1, 0.5, 0.4};
    ok.kind = an::CurveKind::pdf;
    CHECK_NOTHROW(ok.validate());

    an::DistributionCurve bad_grid = ok;
    bad_grid.abscissa = {0.0, 1.0, 1.0};
    CHECK_THROWS_AS(bad_grid.validate(), std::invalid_argument);

    an::DistributionCurve neg = ok;
    neg.values[1] = -0.2;
    CHECK_THROWS_AS(neg.validate(), std::invalid_argument);

    an::DistributionCurve cdf = ok;
    cdf.kind = an::CurveKind::cdf;
    cdf.values = {0.1, 0.6, 0.5};
    CHECK_THROWS_AS(cdf.validate(), std::invalid_argument);
    cdf.values = {0.1, 0.6, 1.0};
    CHECK_NOTHROW(cdf.validate());
}
