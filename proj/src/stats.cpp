#include "linkdyn/stats.hpp"

#include "linkdyn/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace linkdyn::verify {

analytic::DistributionCurve empirical_pdf(std::span<const double> samples, int bins) {
    if (samples.empty()) throw std::invalid_argument("empirical_pdf: empty input");
    const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
    double lo = *mn, hi = *mx;
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }
    return empirical_pdf(samples, bins, lo, hi);
}

analytic::DistributionCurve empirical_pdf(std::span<const double> samples, int bins, double lo,
                                          double hi) {
    if (samples.size() < 100) throw std::invalid_argument("empirical_pdf: need at least 100 samples");
    if (bins < 10) throw std::invalid_argument("empirical_pdf: need at least 10 bins");
    if (!(lo < hi)) throw std::invalid_argument("empirical_pdf: need lo < hi");
    std::vector<double> counts(bins, 0.0);
    const double width = (hi - lo) / bins;
    for (double v : samples) {
        if (v < lo || v > hi) continue;
        int b = static_cast<int>((v - lo) / width);
        if (b == bins) b = bins - 1;
        counts[b] += 1.0;
    }
    analytic::DistributionCurve curve;
    curve.kind = analytic::CurveKind::pdf;
    curve.source = "empirical-histogram";
    curve.abscissa.resize(bins);
    curve.values.resize(bins);
    // density normalization uses the full sample count so mass outside the
    // range is not silently reassigned
    const double n = static_cast<double>(samples.size());
    for (int b = 0; b < bins; ++b) {
        curve.abscissa[b] = lo + (b + 0.5) * width;
        curve.values[b] = counts[b] / (n * width);
    }
    return curve;
}

analytic::DistributionCurve empirical_cdf(std::span<const double> samples) {
    if (samples.empty()) throw std::invalid_argument("empirical_cdf: empty input");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    analytic::DistributionCurve curve;
    curve.kind = analytic::CurveKind::cdf;
    curve.source = "empirical-cdf";
    const double n = static_cast<double>(sorted.size());
    // collapse ties so the abscissa stays strictly increasing
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
        curve.abscissa.push_back(sorted[i]);
        curve.values.push_back(static_cast<double>(i + 1) / n);
    }
    return curve;
}

KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf) {
    if (samples.size() < 50) throw std::invalid_argument("ks_test: need at least 50 samples");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max(d, std::max(f - static_cast<double>(i) / n,
                                 static_cast<double>(i + 1) / n - f));
    }
    const double sqrt_n = std::sqrt(n);
    const double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
    return KsResult{d, sf::kolmogorov_q(lambda), sorted.size()};
}

analytic::DistributionCurve empirical_autocov(const sim::SamplePath& path,
                                              std::size_t max_lag_steps, bool normalized) {
    const std::vector<double>& x = path.values;
    if (max_lag_steps < 1) throw std::invalid_argument("empirical_autocov: max_lag_steps must be >= 1");
    if (x.size() < 10 * max_lag_steps) {
        throw std::invalid_argument("empirical_autocov: path length must be >= 10 * max_lag_steps");
    }
    const double n = static_cast<double>(x.size());
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    analytic::DistributionCurve curve;
    curve.kind = analytic::CurveKind::pdf; // generic nonneg-x curve container
    curve.source = normalized ? "empirical-autocov-normalized" : "empirical-autocov";
    curve.abscissa.resize(max_lag_steps + 1);
    curve.values.resize(max_lag_steps + 1);
    for (std::size_t m = 0; m <= max_lag_steps; ++m) {
        double acc = 0.0;
        for (std::size_t i = 0; i + m < x.size(); ++i) {
            acc += (x[i] - mean) * (x[i + m] - mean);
        }
        curve.abscissa[m] = static_cast<double>(m) * path.dt;
        curve.values[m] = acc / n; // biased estimator
    }
    if (normalized) {
        const double c0 = curve.values[0];
        if (c0 <= 0.0) throw std::invalid_argument("empirical_autocov: zero variance path");
        for (double& v : curve.values) v /= c0;
    }
    // lag 0 sits at abscissa 0; caller may drop it before validate()
    return curve;
}

CrossingSummary crossing_analysis(const sim::SamplePath& path, const SnrThreshold& thr) {
    const std::vector<double>& x = path.values;
    if (x.size() < 2) throw std::invalid_argument("crossing_analysis: need at least 2 samples");
    CrossingSummary out;
    out.threshold = thr.rho_th;
    out.horizon = path.dt * static_cast<double>(x.size());

    struct Run {
        bool on;
        std::size_t len;
    };
    std::vector<Run> runs;
    bool state = x[0] >= thr.rho_th;
    std::size_t len = 1, on_samples = state ? 1 : 0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        const bool s = x[i] >= thr.rho_th;
        if (s) ++on_samples;
        if (s == state) {
            ++len;
        } else {
            runs.push_back({state, len});
            state = s;
            len = 1;
        }
    }
    runs.push_back({state, len});

    out.fraction_on = static_cast<double>(on_samples) / static_cast<double>(x.size());
    if (runs.size() == 1) {
        // uncensored by convention: the whole horizon is one sojourn
        (runs[0].on ? out.on_durations : out.off_durations)
            .push_back(path.dt * static_cast<double>(runs[0].len));
        return out;
    }
    for (std::size_t i = 1; i + 1 < runs.size(); ++i) {
        (runs[i].on ? out.on_durations : out.off_durations)
            .push_back(path.dt * static_cast<double>(runs[i].len));
    }
    return out;
}

double l1_histogram_distance(std::span<const double> samples,
                             const std::function<double(double, double)>& bin_mass, int bins,
                             double lo, double hi) {
    if (samples.size() < 100) throw std::invalid_argument("l1_histogram_distance: need at least 100 samples");
    if (bins < 10) throw std::invalid_argument("l1_histogram_distance: need at least 10 bins");
    if (!(lo < hi)) throw std::invalid_argument("l1_histogram_distance: need lo < hi");
    std::vector<double> counts(bins, 0.0);
    const double width = (hi - lo) / bins;
    std::size_t outside = 0;
    for (double v : samples) {
        if (v < lo || v > hi) {
            ++outside;
            continue;
        }
        int b = static_cast<int>((v - lo) / width);
        if (b == bins) b = bins - 1;
        counts[b] += 1.0;
    }
    const double n = static_cast<double>(samples.size());
    double l1 = 0.0, analytic_in_range = 0.0;
    for (int b = 0; b < bins; ++b) {
        const double p = bin_mass(lo + b * width, lo + (b + 1) * width);
        analytic_in_range += p;
        l1 += std::fabs(counts[b] / n - p);
    }
    l1 += std::fabs(static_cast<double>(outside) / n - (1.0 - analytic_in_range));
    return l1;
}

std::function<double(double, double)> bin_mass_from_pdf(std::function<double(double)> pdf) {
    return [pdf = std::move(pdf)](double a, double b) {
        const double mid = 0.5 * (a + b);
        return (b - a) / 6.0 * (pdf(a) + 4.0 * pdf(mid) + pdf(b));
    };
}

std::function<double(double, double)> bin_mass_from_pdf_adaptive(std::function<double(double)> pdf) {
    return [pdf = std::move(pdf)](double a, double b) {
        QuadratureControl qc;
        qc.rel_tol = 1e-8;
        qc.abs_tol = 1e-13;
        return integrate(pdf, a, b, qc).value;
    };
}

double sample_quantile(std::span<const double> samples, double q) {
    if (samples.empty()) throw std::invalid_argument("sample_quantile: empty input");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("sample_quantile: q must be in [0,1]");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const auto idx = static_cast<std::size_t>(q * (sorted.size() - 1) + 0.5);
    return sorted[std::min(idx, sorted.size() - 1)];
}

} // namespace linkdyn::verify
