#pragma once

#include "nilt/types.hpp"

namespace nilt {

/// Cosine-product spectral form of a CME weight function:
///   f_N(t) = c e^{-lambda t} prod_j cos^2((omega lambda t - phi_j)/2)
struct CmeSpectralForm {
    int n = 0;
    double c = 1.0;
    double lambda = 1.0;
    double omega = 1.0;
    std::vector<double> phases;  // phi_j, canonical: sorted ascending in [0, 2pi)

    void validate() const;  // throws std::invalid_argument
};

/// Harmonic coefficients d_{-n..n} of prod_j cos^2((x - phi_j)/2); d[i]
/// holds the coefficient of e^{i(n-i)x} (descending harmonic order), with
/// d_{-k} = conj(d_k).
struct LaurentSpectrum {
    int n = 0;
    std::vector<Complex> d;

    Complex harmonic(int k) const { return d[n - k]; }
};

/// Expands the cosine product by iterated convolution. Factors are combined
/// in a spread (bit-reversed over sorted phases) order: multiplying adjacent
/// phases first builds large intermediate coefficients that later cancel and
/// would contaminate the tiny final ones.
LaurentSpectrum laurent_spectrum(const std::vector<double>& phases);

struct CmeMoments {
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;  // integral of t^p f for lambda=1, c=1
};

CmeMoments cme_moments(const LaurentSpectrum& spectrum, double omega);

/// Squared coefficient of variation of the induced density; independent of
/// c and lambda.
double scv(const CmeSpectralForm& form);

/// Sets lambda so the mean is 1 and c so the mass is 1 (closed-form moments).
CmeSpectralForm normalize(CmeSpectralForm form);

/// Exponential-sum representation: beta_k = lambda (1 -+ i k omega),
/// eta_k = c d_k, arranged in the CoefficientSet conjugate layout.
CoefficientSet expand_spectral_form(const CmeSpectralForm& form);

/// Zeros of the weight function in (0, t_max]: closed form
/// t = (phi_j + pi + 2 pi m) / (omega lambda), each double zero counted once.
std::vector<double> cme_zeros(const CmeSpectralForm& form, double t_max);

struct OptimizerSettings {
    long max_evaluations = 200000;  // SCV evaluation budget per order
    unsigned seed = 0;              // recorded in the cache; the search grids are deterministic
    bool require_main_lobe = true;  // reject basins with f_main < 0.99 (orders >= 4)
};

struct OptimizeOutcome {
    CmeSpectralForm form;
    double scv_value = 0.0;
    long evaluations = 0;
    bool converged = false;  // stationarity check passed within budget
};

/// Minimizes SCV over (omega, phases) with structured multi-starts at low
/// order and continuation in n above; the returned form is normalized.
/// Throws NumericError when no admissible local minimum is found.
OptimizeOutcome optimize_cme(int n, const OptimizerSettings& settings = {});

}  // namespace nilt
