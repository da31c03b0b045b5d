#include "linkdyn/stats.hpp"

#include "linkdyn/analytic.hpp"
#include "linkdyn/procsim.hpp"
#include "linkdyn/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

using namespace linkdyn;
namespace an = linkdyn::analytic;

TEST_CASE("empirical_pdf: degenerate input occupies one bin") {
    std::vector<double> constant(500, 3.25);
    const an::DistributionCurve h = verify::empirical_pdf(constant, 10);
    const double width = (h.abscissa[1] - h.abscissa[0]);
    int occupied = 0;
    for (double v : h.values) {
        if (v > 0.0) {
            ++occupied;
            CHECK(v == doctest::Approx(1.0 / width).epsilon(1e-12));
        }
    }
    CHECK(occupied == 1);
}

TEST_CASE("empirical_pdf integrates to one and validates") {
    Philox4x32 rng(8, 70);
    std::vector<double> x(20000);
    for (double& v : x) v = rng.next_normal();
    const an::DistributionCurve h = verify::empirical_pdf(x, 50);
    h.validate();
    const double width = h.abscissa[1] - h.abscissa[0];
    double mass = 0.0;
    for (double v : h.values) mass += v * width;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));

    std::vector<double> tiny(10, 0.0);
    CHECK_THROWS_AS(verify::empirical_pdf(tiny, 20), std::invalid_argument);
    std::vector<double> ok(200, 0.0);
    CHECK_THROWS_AS(verify::empirical_pdf(ok, 5), std::invalid_argument);
    CHECK_THROWS_AS(verify::empirical_pdf(std::vector<double>{}, 20), std::invalid_argument);
}

TEST_CASE("empirical_cdf ends at one and is monotone") {
    Philox4x32 rng(9, 71);
    std::vector<double> x(5000);
    for (double& v : x) v = rng.next_exponential();
    const an::DistributionCurve c = verify::empirical_cdf(x);
    c.validate();
    CHECK(c.values.back() == 1.0);
    CHECK_THROWS_AS(verify::empirical_cdf(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("exponential histogram is close to the analytic law in L1") {
    Philox4x32 rng(10, 72);
    const CirParams cir = derive_cir(MobilityParams(1.0, 100.0));
    std::vector<double> z(100000);
    for (double& v : z) v = cir.theta * rng.next_exponential();
    auto mass = [&](double a, double b) {
        return an::z_stationary_cdf(b, cir) - an::z_stationary_cdf(a, cir);
    };
    const double l1 = verify::l1_histogram_distance(z, mass, 100, 0.0,
                                                    verify::sample_quantile(z, 0.999));
    CHECK(l1 < 0.05);
}

TEST_CASE("ks_test equals the brute-force statistic at n = 50") {
    Philox4x32 rng(11, 73);
    std::vector<double> x(50);
    for (double& v : x) v = rng.next_double();
    auto cdf = [](double v) { return std::clamp(v, 0.0, 1.0); };
    const verify::KsResult ks = verify::ks_test(x, cdf);

    std::sort(x.begin(), x.end());
    double brute = 0.0;
    const double n = 50.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        brute = std::max(brute, std::fabs(cdf(x[i]) - static_cast<double>(i) / n));
        brute = std::max(brute, std::fabs(static_cast<double>(i + 1) / n - cdf(x[i])));
    }
    CHECK(ks.statistic == doctest::Approx(brute).epsilon(1e-12));

    std::vector<double> too_few(20, 0.5);
    CHECK_THROWS_AS(verify::ks_test(too_few, cdf), std::invalid_argument);
}

TEST_CASE("ks_test p-values are calibrated under the null") {
    int rejections = 0;
    const int reps = 100;
    for (int r = 0; r < reps; ++r) {
        Philox4x32 rng(500 + r, 74);
        std::vector<double> x(1000);
        for (double& v : x) v = rng.next_double();
        const verify::KsResult ks =
            verify::ks_test(x, [](double v) { return std::clamp(v, 0.0, 1.0); });
        if (ks.p_value < 0.05) ++rejections;
    }
    const double frac = static_cast<double>(rejections) / reps;
    CHECK(frac >= 0.01);
    CHECK(frac <= 0.10);
}

TEST_CASE("ks_test rejects a wrong scale decisively") {
    Philox4x32 rng(15, 75);
    std::vector<double> x(10000);
    for (double& v : x) v = rng.next_exponential(); // Exp(1)
    const verify::KsResult ks =
        verify::ks_test(x, [](double v) { return -std::expm1(-2.0 * v); }); // Exp(mean 1/2)
    CHECK(ks.p_value < 1e-6);
}

TEST_CASE("empirical_autocov: white noise and definitions") {
    Philox4x32 rng(16, 76);
    sim::SamplePath path{1.0, 16, sim::PathKind::ou_coord, {}, {}};
    path.values.resize(100000);
    for (double& v : path.values) v = rng.next_normal();
    const an::DistributionCurve c = verify::empirical_autocov(path, 20);

    // lag 0 equals the (biased) sample variance
    double mean = 0.0;
    for (double v : path.values) mean += v;
    mean /= static_cast<double>(path.values.size());
    double var = 0.0;
    for (double v : path.values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(path.values.size());
    CHECK(c.values[0] == doctest::Approx(var).epsilon(1e-12));

    // lags >= 1 inside the +-3/sqrt(N) band
    const double band = 3.0 / std::sqrt(static_cast<double>(path.values.size()));
    for (std::size_t i = 1; i < c.values.size(); ++i) {
        CHECK(std::fabs(c.values[i]) < band);
    }

    sim::SamplePath short_path{1.0, 0, sim::PathKind::ou_coord, {}, {}};
    short_path.values.assign(50, 1.0);
    CHECK_THROWS_AS(verify::empirical_autocov(short_path, 10), std::invalid_argument);
}

TEST_CASE("empirical_autocov of a stationary Z path matches exp(-k lag)") {
    const MobilityParams m(0.1, 100.0);
    const CirParams cir = derive_cir(m);
    const sim::PairPaths pair = sim::simulate_pair_2d(m, 1e-3, 500000,
                                                      sim::PairInit::stationary(), 77);
    const an::DistributionCurve c = verify::empirical_autocov(pair.z, 100, /*normalized=*/true);
    for (std::size_t i = 0; i < c.abscissa.size(); ++i) {
        CHECK(std::fabs(c.values[i] - std::exp(-cir.k * c.abscissa[i])) < 0.1);
    }
}

TEST_CASE("crossing_analysis: degenerate and alternating paths") {
    const PathLossParams pl2(2, 1);
    const SnrThreshold thr(1.0, pl2);

    sim::SamplePath above{0.5, 0, sim::PathKind::snr, {}, {}};
    above.values.assign(10, 2.0);
    const verify::CrossingSummary all_on = verify::crossing_analysis(above, thr);
    CHECK(all_on.fraction_on == 1.0);
    REQUIRE(all_on.on_durations.size() == 1);
    CHECK(all_on.on_durations[0] == doctest::Approx(5.0)); // one sojourn = horizon
    CHECK(all_on.off_durations.empty());

    // on,on,off,off,off,on,on,on,off: interior sojourns are off(3) and on(3)
    sim::SamplePath alt{1.0, 0, sim::PathKind::snr, {}, {}};
    alt.values = {2.0, 2.0, 0.5, 0.5, 0.5, 2.0, 2.0, 2.0, 0.5};
    const verify::CrossingSummary cs = verify::crossing_analysis(alt, thr);
    CHECK(cs.fraction_on == doctest::Approx(5.0 / 9.0));
    REQUIRE(cs.on_durations.size() == 1);
    CHECK(cs.on_durations[0] == doctest::Approx(3.0));
    REQUIRE(cs.off_durations.size() == 1);
    CHECK(cs.off_durations[0] == doctest::Approx(3.0));
    CHECK(cs.horizon == doctest::Approx(9.0));

    // boundary value belongs to the on state
    sim::SamplePath edge{1.0, 0, sim::PathKind::snr, {}, {}};
    edge.values = {1.0, 0.5};
    CHECK(verify::crossing_analysis(edge, thr).fraction_on == doctest::Approx(0.5));

    sim::SamplePath too_short{1.0, 0, sim::PathKind::snr, {}, {}};
    too_short.values = {1.0};
    CHECK_THROWS_AS(verify::crossing_analysis(too_short, thr), std::invalid_argument);
}

TEST_CASE("crossing durations and fraction are consistent on a simulated path") {
    const MobilityParams m(0.6, 4.0);
    const CirParams cir = derive_cir(m);
    const PathLossParams pl2(2, 1);
    const SnrThreshold thr(db_to_linear(2.0), pl2);
    const sim::PairPaths pair = sim::simulate_pair_2d(m, 6e-4, 200000,
                                                      sim::PairInit::stationary(), 123);
    sim::SamplePath snr{6e-4, 123, sim::PathKind::snr, {}, {}};
    for (double z : pair.z.values) snr.values.push_back(1.0 / z);
    const verify::CrossingSummary cs = verify::crossing_analysis(snr, thr);

    // fraction close to the connectivity probability (3 sigma with
    // n_eff = horizon / tau)
    const double conn = an::conn_prob_nofading(thr, cir, pl2);
    const double sigma = std::sqrt(conn * (1.0 - conn) / (cs.horizon / m.tau));
    CHECK(std::fabs(cs.fraction_on - conn) < 3.0 * sigma);

    for (double d : cs.on_durations) CHECK(d > 0.0);
    for (double d : cs.off_durations) CHECK(d > 0.0);

    // interior sojourns alternate, so the counts differ by at most one
    const auto n_on = static_cast<long>(cs.on_durations.size());
    const auto n_off = static_cast<long>(cs.off_durations.size());
    CHECK(std::labs(n_on - n_off) <= 1);
}

TEST_CASE("sample_quantile basics") {
    std::vector<double> v{5.0, 1.0, 3.0, 2.0, 4.0};
    CHECK(verify::sample_quantile(v, 0.0) == 1.0);
    CHECK(verify::sample_quantile(v, 1.0) == 5.0);
    CHECK(verify::sample_quantile(v, 0.5) == 3.0);
    CHECK_THROWS_AS(verify::sample_quantile(std::vector<double>{}, 0.5), std::invalid_argument);
}
