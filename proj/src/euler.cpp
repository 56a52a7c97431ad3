#include "nilt/euler.hpp"

#include <cmath>

namespace nilt {

namespace {

// exact binomial coefficients via Pascal recursion in unsigned __int128,
// converted to double at the end (n/2 <= 64 keeps everything exact)
std::vector<double> binomial_row(int m) {
    std::vector<unsigned __int128> row(m + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= m; ++i) {
        for (int j = i; j >= 1; --j) row[j] += row[j - 1];
    }
    std::vector<double> out(m + 1);
    for (int j = 0; j <= m; ++j) out[j] = static_cast<double>(row[j]);
    return out;
}

}  // namespace

EulerRecipe euler_recipe(int n) {
    if (n < 2 || n % 2 != 0 || n > 128) {
        throw std::invalid_argument("Euler defined only for even n, 2 <= n <= 128");
    }
    EulerRecipe r;
    r.n = n;
    r.alpha = n * std::log(10.0) / 6.0;
    const int m = n / 2;
    const std::vector<double> binom = binomial_row(m);
    const double scale = std::ldexp(1.0, -m);  // 2^{-m}
    r.xi.assign(n + 1, 0.0);
    for (int k = 1; k <= m; ++k) r.xi[k] = 1.0;
    r.xi[n] = scale;
    for (int k = 1; k < m; ++k) r.xi[n - k] = r.xi[n - k + 1] + scale * binom[k];
    return r;
}

CoefficientSet euler_coefficients(int n) {
    const EulerRecipe r = euler_recipe(n);
    CoefficientSet c;
    c.order_n = n;
    c.method_tag = MethodTag::Euler;
    c.dominant_real_part = r.alpha;
    c.nodes.resize(2 * n + 1);
    c.weights.resize(2 * n + 1);
    const double half_ea = 0.5 * std::exp(r.alpha);
    c.nodes[0] = Complex(r.alpha, 0.0);
    c.weights[0] = Complex(half_ea, 0.0);
    for (int k = 1; k <= n; ++k) {
        const double w = (k % 2 == 0 ? 1.0 : -1.0) * half_ea * r.xi[k];
        c.nodes[k] = Complex(r.alpha, M_PI * k);
        c.nodes[2 * n - k + 1] = Complex(r.alpha, -M_PI * k);
        c.weights[k] = Complex(w, 0.0);
        c.weights[2 * n - k + 1] = Complex(w, 0.0);
    }
    return c;
}

}  // namespace nilt
