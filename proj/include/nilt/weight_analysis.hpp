#pragma once

#include "nilt/cme.hpp"
#include "nilt/types.hpp"

#include <optional>

namespace nilt {

/// Left/main/right split of the weight function around its main peak at t=1.
struct WeightDecomposition {
    std::vector<double> zeros;  // strictly increasing zeros in (0, t_max]
    int main_index = 0;         // I with zeros[I] <= 1 <= zeros[I+1] (0-based)
    double f_left = 0.0;
    double f_main = 0.0;
    double f_right = 0.0;
};

/// All zeros of f_N in (0, t_max]. CME sets use the closed form (touching
/// zeros of the squared cosines, counted once); Euler sets use sign-change
/// bracketing on a grid of step min(0.01, 1/(4n)) refined by bisection to
/// 1e-10. The optional spectral form supplies the CME closed form.
std::vector<double> find_zeros(const CoefficientSet& coeffs, double t_max,
                               const std::optional<CmeSpectralForm>& form = std::nullopt);

WeightDecomposition decompose_weight(const CoefficientSet& coeffs,
                                     const std::optional<CmeSpectralForm>& form = std::nullopt,
                                     double t_max = 4.0);

/// Adaptive quadrature of h(tT) f_{N,theta}(t) dt over [0, t_cut]; the cutoff
/// combines the closed-form envelope bound of |f_{N,theta}| with a sampled
/// bound of |h| so the discarded tail is below 1e-12. Requires query.oracle.
double quadrature_oracle(const TransformQuery& query, const CoefficientSet& coeffs, double T,
                         double theta,
                         const std::optional<CmeSpectralForm>& form = std::nullopt);

struct EstimateDecomposition {
    double eps_left = 0.0;
    double h_main = 0.0;
    double eps_right = 0.0;
    double total() const { return eps_left + h_main + eps_right; }
};

EstimateDecomposition decompose_estimate(const TransformQuery& query, const CoefficientSet& coeffs,
                                         double T, double theta,
                                         const std::optional<CmeSpectralForm>& form = std::nullopt);

}  // namespace nilt
