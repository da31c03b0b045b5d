#pragma once

#include <stdexcept>
#include <string>

namespace linkdyn {

/// Thrown when an iterative numeric procedure (quadrature, series summation,
/// Yule-Walker fit) fails to reach its target accuracy. Carries the best
/// estimate achieved and the residual error bound at the point of failure.
class numerical_error : public std::runtime_error {
public:
    numerical_error(const std::string& msg, double estimate_, double error_bound_)
        : std::runtime_error(msg + " (estimate=" + std::to_string(estimate_) +
                             ", error_bound=" + std::to_string(error_bound_) + ")"),
          estimate(estimate_),
          error_bound(error_bound_) {}

    double estimate;
    double error_bound;
};

} // namespace linkdyn
