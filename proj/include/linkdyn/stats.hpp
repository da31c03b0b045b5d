#pragma once

#include "linkdyn/analytic.hpp"
#include "linkdyn/params.hpp"
#include "linkdyn/sample_path.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace linkdyn::verify {

enum class StatKind { ks, l1_histogram, max_abs_dev, binomial_z };

/// Whether a report passes when the statistic is below the threshold
/// (distances) or above it (p-values).
enum class PassDirection { value_leq_threshold, value_geq_threshold };

struct VerificationReport {
    std::string name;
    StatKind statistic = StatKind::l1_histogram;
    double value = 0.0;
    double threshold = 0.0;
    PassDirection direction = PassDirection::value_leq_threshold;
    bool pass = false;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
    double runtime_seconds = 0.0;
    std::string details;

    void finalize() {
        pass = direction == PassDirection::value_leq_threshold ? value <= threshold
                                                               : value >= threshold;
    }
};

/// On/off sojourn statistics of an SNR path against a threshold.
struct CrossingSummary {
    double threshold = 0.0;
    std::vector<double> on_durations;
    std::vector<double> off_durations;
    double fraction_on = 0.0;
    double horizon = 0.0;
};

/// Density-normalized histogram (integrates to one over its bins).
analytic::DistributionCurve empirical_pdf(std::span<const double> samples, int bins);
analytic::DistributionCurve empirical_pdf(std::span<const double> samples, int bins, double lo,
                                          double hi);

/// Step empirical cdf evaluated at the sorted samples.
analytic::DistributionCurve empirical_cdf(std::span<const double> samples);

struct KsResult {
    double statistic;
    double p_value;
    std::size_t n;
};

/// One-sample Kolmogorov-Smirnov test against an analytic cdf. Caller is
/// responsible for thinning correlated inputs.
KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Biased (1/N) autocovariance estimates for lags 0..max_lag_steps.
analytic::DistributionCurve empirical_autocov(const sim::SamplePath& path,
                                              std::size_t max_lag_steps, bool normalized = false);

/// Alternating sojourn durations at sample resolution (a crossing between
/// samples belongs to the later sample). First/last censored runs are kept
/// out of the duration lists unless the path is a single run; fraction_on
/// counts every sample.
CrossingSummary crossing_analysis(const sim::SamplePath& path, const SnrThreshold& thr);

/// L1 histogram distance between samples and an analytic law: sum over bins
/// of |empirical - analytic| probability mass plus the out-of-range
/// discrepancy. bin_mass(a, b) must return the analytic mass of [a, b].
double l1_histogram_distance(std::span<const double> samples,
                             const std::function<double(double, double)>& bin_mass, int bins,
                             double lo, double hi);

/// Analytic bin mass by 3-point Simpson when only a density is available.
/// Adequate for densities that are smooth on the bin scale.
std::function<double(double, double)> bin_mass_from_pdf(std::function<double(double)> pdf);

/// Analytic bin mass by adaptive quadrature, for densities with structure
/// far below the bin width (the eta=4 fading SNR density falls by orders of
/// magnitude inside the first histogram bin).
std::function<double(double, double)> bin_mass_from_pdf_adaptive(std::function<double(double)> pdf);

/// Empirical quantile (sorted copy, nearest-rank).
double sample_quantile(std::span<const double> samples, double q);

} // namespace linkdyn::verify
