#pragma once

#include "linkdyn/errors.hpp"

#include <functional>
#include <vector>

namespace linkdyn {

struct QuadratureControl {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_intervals = 10000;
};

struct QuadratureResult {
    double value;
    double error_estimate;
    int intervals;
};

/// Adaptive Gauss-Kronrod 7-15 on [a,b]; worst interval is split first.
/// Throws numerical_error once max_intervals is reached without meeting
/// max(abs_tol, rel_tol * |value|).
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureControl& ctl = {});

/// Same, seeded with explicit interior knots (for integrands whose sharp
/// features a coarse first pass would miss entirely).
QuadratureResult integrate_segments(const std::function<double(double)>& f,
                                    const std::vector<double>& knots,
                                    const QuadratureControl& ctl = {});

/// Integral over [a, inf) via the rational map w = a + t/(1-t). The
/// integrand must vanish (not overflow) for large arguments.
QuadratureResult integrate_to_inf(const std::function<double(double)>& f, double a,
                                  const QuadratureControl& ctl = {});

} // namespace linkdyn
