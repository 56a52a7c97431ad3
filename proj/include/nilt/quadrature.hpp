#pragma once

#include <functional>
#include <vector>

namespace nilt {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7,15) with deterministic depth-first bisection.
/// Splits until the local error estimate is below the interval's share of
/// abs_tol; throws NumericError when max_depth is exhausted with the achieved
/// error in the message.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                              double abs_tol, int max_depth = 48);

/// Same, but with initial panel boundaries (useful when the integrand's
/// oscillation structure is known, e.g. weight-function zeros).
QuadResult integrate_panels(const std::function<double(double)>& f,
                            const std::vector<double>& boundaries, double abs_tol,
                            int max_depth = 48);

}  // namespace nilt
