#pragma once

#include "nilt/types.hpp"

namespace nilt {

/// The deterministic ingredients of the Euler method at even order n:
/// alpha = n ln(10)/6 and the Euler-summation weights xi_1..xi_n.
struct EulerRecipe {
    int n = 0;
    double alpha = 0.0;
    std::vector<double> xi;  // xi[k], 1 <= k <= n (xi[0] unused)
};

EulerRecipe euler_recipe(int n);

/// Expanded 2n+1 Euler coefficient set. n must be even, 2 <= n <= 128.
///
/// The real node and each member of an expanded conjugate pair carry the
/// uniform e^alpha/2 prefactor; this is the convention (selected by the
/// 1/s and 1/(1+s) construction-time oracles) under which the weight
/// function integrates to one.
CoefficientSet euler_coefficients(int n);

}  // namespace nilt
