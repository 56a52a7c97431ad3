#include "nilt/types.hpp"

#include <cassert>
#include <cmath>
#include <sstream>

namespace nilt {

namespace {

bool close(Complex a, Complex b, double tol) {
    return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

}  // namespace

void CoefficientSet::validate() const {
    const int N = term_count();
    if (order_n < 0 || static_cast<int>(weights.size()) != N ||
        static_cast<int>(nodes.size()) != N) {
        throw std::invalid_argument("CoefficientSet: expected 2n+1 weights and nodes");
    }
    if (std::abs(nodes[0].imag()) > 1e-12 * (1.0 + std::abs(nodes[0]))) {
        throw std::invalid_argument("CoefficientSet: nodes[0] must be real");
    }
    const int n = order_n;
    for (int k = 1; k <= n; ++k) {
        if (!close(nodes[2 * n - k + 1], std::conj(nodes[k]), 1e-12) ||
            !close(weights[2 * n - k + 1], std::conj(weights[k]), 1e-12)) {
            std::ostringstream os;
            os << "CoefficientSet: entry " << 2 * n - k + 1
               << " is not the conjugate of entry " << k;
            throw std::invalid_argument(os.str());
        }
    }
    double mu = nodes[0].real();
    for (const Complex& b : nodes) mu = std::max(mu, b.real());
    if (std::abs(mu - dominant_real_part) > 1e-9 * (1.0 + std::abs(mu))) {
        throw std::invalid_argument("CoefficientSet: dominant_real_part does not match nodes");
    }
}

double weight_function_value(const CoefficientSet& coeffs, double t, EvalStats* stats) {
    assert(t >= 0.0);
    Complex sum(0.0, 0.0);
    double term_mag = 0.0;
    for (size_t k = 0; k < coeffs.nodes.size(); ++k) {
        const Complex term = coeffs.weights[k] * std::exp(-coeffs.nodes[k] * t);
        sum += term;
        term_mag += std::abs(term);
    }
    const double resid = term_mag > 0.0 ? std::abs(sum.imag()) / term_mag : 0.0;
    if (stats) {
        stats->imag_ratio = resid;
        stats->imag_warning = resid > 1e-10;
    }
    return sum.real();
}

double weight_integral(const CoefficientSet& coeffs, double lo, double hi) {
    if (!(0.0 <= lo) || !(lo < hi)) {
        throw std::invalid_argument("weight_integral: need 0 <= lo < hi");
    }
    const bool infinite = std::isinf(hi);
    Complex sum(0.0, 0.0);
    for (size_t k = 0; k < coeffs.nodes.size(); ++k) {
        const Complex b = coeffs.nodes[k];
        if (infinite && b.real() <= 0.0) {
            std::ostringstream os;
            os << "divergent tail integral: node " << k << " has Re(beta) = " << b.real();
            throw NumericError(os.str());
        }
        const Complex upper = infinite ? Complex(0.0, 0.0) : std::exp(-b * hi);
        sum += coeffs.weights[k] * (std::exp(-b * lo) - upper) / b;
    }
    return sum.real();
}

CoefficientSet shift_coefficients(const CoefficientSet& coeffs, double theta) {
    CoefficientSet out = coeffs;
    const double scale = std::exp(theta);
    for (size_t k = 0; k < out.nodes.size(); ++k) {
        out.weights[k] *= scale;
        out.nodes[k] += theta;
    }
    out.dominant_real_part += theta;
    return out;
}

double evaluate_nilt(const CoefficientSet& coeffs, const TransformQuery& query,
                     double T, double theta, EvalStats* stats) {
    if (!(T > 0.0)) throw std::invalid_argument("evaluate_nilt: T must be positive");
    const double a = query.abscissa;
    Complex sum(0.0, 0.0);
    for (size_t k = 0; k < coeffs.nodes.size(); ++k) {
        const Complex s = (coeffs.nodes[k] + theta) / T;
        if (s.real() <= a) {
            std::ostringstream os;
            os << "node outside convergence region: k = " << k << ", Re(s) = " << s.real()
               << " <= abscissa " << a;
            throw std::invalid_argument(os.str());
        }
        const Complex h = query.transform(s);
        if (!std::isfinite(h.real()) || !std::isfinite(h.imag())) {
            std::ostringstream os;
            os << "transform returned non-finite value at node k = " << k;
            throw NumericError(os.str());
        }
        sum += coeffs.weights[k] * h;
    }
    if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag())) {
        throw NumericError("node sum exceeded double range");
    }
    const double re = sum.real();
    const double resid = std::abs(re) > 0.0 ? std::abs(sum.imag()) / std::abs(re)
                                            : (sum.imag() == 0.0 ? 0.0 : 1.0);
    if (stats) {
        stats->imag_ratio = resid;
        stats->imag_warning = resid > 1e-8;
    }
    if (re == 0.0) return 0.0;
    // value = e^theta * re / T, assembled in log space
    const double mag = theta + std::log(std::abs(re)) - std::log(T);
    if (mag > 709.0) throw NumericError("shifted estimate exceeded double range");
    return std::copysign(std::exp(mag), re);
}

}  // namespace nilt
