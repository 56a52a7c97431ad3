#include "nilt/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

// Region-split kernels. Boundaries were fixed by a sweep against the frozen
// high-precision reference tables in tests/data (see tests/test_special.cpp):
//   erfcx:  |z| <= 1       power series for erf
//           1 < |z| < 8    trapezoidal quadrature of the integral
//                          representation with pole-residue correction
//           |z| >= 8       Gauss continued fraction
//   E1:     |z| <= 4       power series around 0
//           |z| > 4        continued fraction (modified Lentz)

namespace nilt {

namespace {

using C = std::complex<double>;

constexpr double kEulerGamma = 0.57721566490153286060651209008;
constexpr double kSqrtPi = 1.77245385090551602729816748334;

C erf_series(C z) {
    // erf(z) = (2/sqrt(pi)) sum (-1)^k z^{2k+1} / (k! (2k+1)), |z| <= 1
    const C z2 = z * z;
    C term = z;
    C sum = z;
    for (int k = 1; k < 40; ++k) {
        term *= -z2 / static_cast<double>(k);
        const C add = term / static_cast<double>(2 * k + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return 2.0 / kSqrtPi * sum;
}

// Trapezoidal rule for erfcx(z) = (z/pi) Int e^{-t^2} / (z^2 + t^2) dt plus
// the pole correction  -2 e^{z^2} / (e^{2 pi z / h} - 1).  Truncation error is
// O(e^{-pi^2/h^2}).  Near-resonant y (Im z close to the lattice k*h with tiny
// Re z) is avoided by picking the step whose lattice is farther from y.
C erfcx_trapezoid(C z, double h) {
    const C z2 = z * z;
    C lattice_sum = 1.0 / z2;
    const int kmax = static_cast<int>(std::ceil(6.5 / h));
    for (int k = 1; k <= kmax; ++k) {
        const double kh = k * h;
        lattice_sum += 2.0 * std::exp(-kh * kh) / (z2 + kh * kh);
    }
    C value = z * h / M_PI * lattice_sum;
    // correction is negligible once Re(2 pi z / h) overflows the exponent
    const C w = 2.0 * M_PI / h * z;
    if (w.real() < 700.0) {
        value -= 2.0 * std::exp(z2) / (std::exp(w) - 1.0);
    }
    return value;
}

double lattice_distance(double y, double h) {
    const double r = std::fmod(y, h);
    return std::min(r, h - r) / h;
}

C erfcx_middle(C z) {
    const double h1 = 0.40, h2 = 0.31;
    if (z.real() < 0.5) {
        const double y = std::abs(z.imag());
        return lattice_distance(y, h1) >= lattice_distance(y, h2) ? erfcx_trapezoid(z, h1)
                                                                  : erfcx_trapezoid(z, h2);
    }
    return erfcx_trapezoid(z, h1);
}

C erfcx_continued_fraction(C z) {
    // sqrt(pi) erfcx(z) = 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
    const double tiny = 1e-300;
    C f = z, Cc = z, D = 0.0;
    for (int j = 1; j <= 300; ++j) {
        const double a = 0.5 * j;
        D = z + a * D;
        if (std::abs(D) < tiny) D = tiny;
        Cc = z + a / Cc;
        if (std::abs(Cc) < tiny) Cc = tiny;
        D = 1.0 / D;
        const C delta = Cc * D;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-17) break;
    }
    return 1.0 / (kSqrtPi * f);
}

}  // namespace

std::complex<double> erfcx_complex(std::complex<double> z) {
    if (z.real() < 0.0) {
        throw std::invalid_argument("erfcx_complex requires Re(z) >= 0");
    }
    const double m = std::abs(z);
    if (m <= 1.0) return std::exp(z * z) * (1.0 - erf_series(z));
    if (m < 8.0) return erfcx_middle(z);
    return erfcx_continued_fraction(z);
}

std::complex<double> e1_complex(std::complex<double> z) {
    return e1_scaled_complex(z) * std::exp(-z);
}

std::complex<double> e1_scaled_complex(std::complex<double> z) {
    if (z == 0.0) throw std::invalid_argument("E1 undefined at z = 0");
    if (z.real() <= 0.0) throw std::invalid_argument("e1 kernels require Re(z) > 0");
    const double m = std::abs(z);
    if (m <= 4.0) {
        // E1(z) = -gamma - log z + sum_{k>=1} (-1)^{k+1} z^k / (k k!)
        C term(1.0, 0.0);
        C sum(0.0, 0.0);
        for (int k = 1; k < 80; ++k) {
            term *= -z / static_cast<double>(k);
            const C add = -term / static_cast<double>(k);
            sum += add;
            if (std::abs(add) < 1e-18 * (std::abs(sum) + 1.0)) break;
        }
        const C e1 = -kEulerGamma - std::log(z) + sum;
        return e1 * std::exp(z);
    }
    // e^z E1(z) = 1/(z + 1/(1 + 1/(z + 2/(1 + 2/(z + ...)))))
    const double tiny = 1e-300;
    C f = z, Cc = z, D = 0.0;
    for (int j = 1; j <= 400; ++j) {
        const double a = (j + 1) / 2;  // 1,1,2,2,3,3,...
        const C b = (j % 2 == 1) ? C(1.0, 0.0) : z;
        D = b + a * D;
        if (std::abs(D) < tiny) D = tiny;
        Cc = b + a / Cc;
        if (std::abs(Cc) < tiny) Cc = tiny;
        D = 1.0 / D;
        const C delta = Cc * D;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-17) break;
    }
    return 1.0 / f;
}

}  // namespace nilt
