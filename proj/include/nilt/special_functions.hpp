#pragma once

#include <complex>

namespace nilt {

/// Scaled complementary error function erfcx(z) = e^{z^2} erfc(z) for
/// Re(z) >= 0, relative accuracy ~1e-13 up to |z| = 1e6.
std::complex<double> erfcx_complex(std::complex<double> z);

/// Exponential integral E1(z) for Re(z) > 0 (z != 0).
std::complex<double> e1_complex(std::complex<double> z);

/// e^z E1(z), computed without forming e^z when |z| is large.
std::complex<double> e1_scaled_complex(std::complex<double> z);

}  // namespace nilt
