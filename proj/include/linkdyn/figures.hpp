#pragma once

#include "linkdyn/stats.hpp"

#include <string>
#include <vector>

namespace linkdyn::verify {

/// Knobs for the verification suite. Tolerances default to the shipped
/// thresholds; theta_scale perturbs the analytic side only (negative
/// control) and sample_scale shrinks sample counts for quick runs.
struct VerifyOptions {
    std::uint64_t seed = 12345;
    double theta_scale = 1.0;
    double sample_scale = 1.0;
    double l1_threshold = 0.05;
    double euler_l1_threshold = 0.08;
    double ks_p_threshold = 0.01;
    double autocov_dev_threshold = 0.1;
    double crossing_sigmas = 3.0;
    std::string only; ///< substring filter on job names
    bool parallel = true;
};

struct FigureCurve {
    std::string name; ///< file stem
    std::string x_label = "x";
    std::vector<double> x;
    std::vector<double> analytic;
    std::vector<double> empirical; ///< may be empty for analytic-only curves
};

struct FigureOutput {
    VerificationReport report;
    std::vector<FigureCurve> curves;
};

/// Names of all suite jobs, in execution order.
std::vector<std::string> figure_names();

/// Regenerates the data behind every comparison figure and scores each
/// against its analytic law. Jobs run concurrently (unless disabled), each
/// on its own RNG substream; results are merged in fixed order.
std::vector<FigureOutput> figure_suite(const VerifyOptions& opt);

} // namespace linkdyn::verify
