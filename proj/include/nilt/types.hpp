#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilt {

using Complex = std::complex<double>;

/// Thrown when a computation leaves the representable range or a numerical
/// procedure fails to converge (distinct from usage errors, which are
/// std::invalid_argument).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

enum class MethodTag { Euler, Cme };

/// One Abate-Whitt method instance at a fixed order: N = 2n+1 nodes and
/// weights, stored fully expanded (both members of each conjugate pair).
/// Layout: nodes[0] is the real node; for 1 <= k <= n, nodes[2n-k+1] is the
/// conjugate of nodes[k].
struct CoefficientSet {
    int order_n = 0;
    std::vector<Complex> weights;  // eta_k
    std::vector<Complex> nodes;    // beta_k
    MethodTag method_tag = MethodTag::Euler;
    double dominant_real_part = 0.0;  // mu = max_k Re(beta_k)

    int term_count() const { return 2 * order_n + 1; }
    void validate() const;  // throws std::invalid_argument on layout violations
};

/// A Laplace-domain query: the transform callable, its abscissa of absolute
/// convergence, and (optionally) a known time-domain function used only by
/// diagnostics and tests.
struct TransformQuery {
    std::function<Complex(Complex)> transform;
    double abscissa = -std::numeric_limits<double>::infinity();
    bool is_bounded_hint = false;
    std::optional<std::function<double(double)>> oracle;
};

/// Diagnostics filled by evaluate_nilt.
struct EvalStats {
    double imag_ratio = 0.0;   // |Im S| / |Re S| of the node sum
    bool imag_warning = false; // true when imag_ratio exceeds 1e-8
};

/// Result of a shift-optimized inversion.
struct NiltResult {
    double value = 0.0;
    double theta_hat = 0.0;
    long objective_evals = 0;    // distinct objective evaluations
    long search_iterations = 0;  // golden-section loop iterations (all restarts)
    bool lower_bound_hit = false;
    bool upper_bound_hit = false;
    double theta_lower = 0.0;
    double theta_upper = 0.0;
    std::string warning;  // non-empty when the caller should distrust the value
};

/// f_N(t) = Re sum_k eta_k exp(-beta_k t). Asserts the conjugate-pair layout
/// keeps the imaginary residue at rounding level (stats optional).
double weight_function_value(const CoefficientSet& coeffs, double t, EvalStats* stats = nullptr);

/// Closed-form integral of f_N over [lo, hi]; hi may be +infinity, which
/// requires every node to have positive real part.
double weight_integral(const CoefficientSet& coeffs, double lo, double hi);

/// eta_k -> e^theta eta_k, beta_k -> beta_k + theta.
CoefficientSet shift_coefficients(const CoefficientSet& coeffs, double theta);

/// h_N(T, theta) = Re sum_k (e^theta eta_k / T) h*((beta_k + theta)/T).
/// The e^theta prefactor is applied in log space so extreme shifts survive
/// as long as the node sum itself is representable. Throws NumericError when
/// the transform returns a non-finite value, std::invalid_argument when a
/// node violates the abscissa precondition.
double evaluate_nilt(const CoefficientSet& coeffs, const TransformQuery& query,
                     double T, double theta, EvalStats* stats = nullptr);

}  // namespace nilt
