#include "nilt/cme.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nilt {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

void deal(const std::vector<int>& in, std::vector<int>& out) {
    if (in.size() <= 2) {
        out.insert(out.end(), in.begin(), in.end());
        return;
    }
    std::vector<int> even, odd;
    for (size_t i = 0; i < in.size(); ++i) (i % 2 == 0 ? even : odd).push_back(in[i]);
    deal(even, out);
    deal(odd, out);
}

// Neumaier compensated sum
struct CompSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        const double t = s + x;
        c += (std::abs(s) >= std::abs(x)) ? (s - t) + x : (x - t) + s;
        s = t;
    }
    double get() const { return s + c; }
};

}  // namespace

void CmeSpectralForm::validate() const {
    if (n < 0) throw std::invalid_argument("CmeSpectralForm: n must be non-negative");
    if (!(c > 0.0)) throw std::invalid_argument("CmeSpectralForm: c must be positive");
    if (!(lambda > 0.0)) throw std::invalid_argument("CmeSpectralForm: lambda must be positive");
    if (!(omega > 0.0)) throw std::invalid_argument("CmeSpectralForm: omega must be positive");
    if (static_cast<int>(phases.size()) != n) {
        throw std::invalid_argument("CmeSpectralForm: phase count must equal n");
    }
    for (double p : phases) {
        if (!(p >= 0.0) || !(p < kTwoPi)) {
            throw std::invalid_argument("CmeSpectralForm: phases must lie in [0, 2pi)");
        }
    }
}

std::vector<int> spread_order(const std::vector<double>& phases) {
    const int n = static_cast<int>(phases.size());
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        const double pa = std::fmod(phases[a] + M_PI, kTwoPi);
        const double pb = std::fmod(phases[b] + M_PI, kTwoPi);
        return pa < pb;
    });
    std::vector<int> out;
    out.reserve(n);
    deal(idx, out);
    return out;
}

LaurentSpectrum laurent_spectrum(const std::vector<double>& phases) {
    const int n = static_cast<int>(phases.size());
    LaurentSpectrum sp;
    sp.n = n;
    // scaled factors (1 + cos(x - phi)) keep intermediates O(1); the exact
    // power-of-two rescale to the cos^2 normalization happens at the end
    std::vector<Complex> d{Complex(1.0, 0.0)};
    std::vector<Complex> next;
    for (int i : spread_order(phases)) {
        const Complex up = 0.5 * std::exp(Complex(0.0, -phases[i]));
        const Complex dn = std::conj(up);
        next.assign(d.size() + 2, Complex(0.0, 0.0));
        for (size_t j = 0; j < d.size(); ++j) {
            next[j] += d[j] * up;
            next[j + 1] += d[j];
            next[j + 2] += d[j] * dn;
        }
        d.swap(next);
    }
    const double rescale = std::ldexp(1.0, -n);  // exact
    for (Complex& v : d) v *= rescale;
    sp.d = std::move(d);
    return sp;
}

CmeMoments cme_moments(const LaurentSpectrum& spectrum, double omega) {
    const int n = spectrum.n;
    CompSum s0, s1, s2;
    for (int i = 0; i <= 2 * n; ++i) {
        const int k = n - i;
        const Complex den(1.0, -k * omega);
        const Complex g1 = spectrum.d[i] / den;
        const Complex g2 = g1 / den;
        const Complex g3 = g2 / den;
        s0.add(g1.real());
        s1.add(g2.real());
        s2.add(g3.real());
    }
    return {s0.get(), s1.get(), 2.0 * s2.get()};
}

double scv(const CmeSpectralForm& form) {
    const LaurentSpectrum sp = laurent_spectrum(form.phases);
    const CmeMoments m = cme_moments(sp, form.omega);
    if (!(m.m0 > 0.0) || !(m.m1 > 0.0) || !(m.m2 > 0.0) || !std::isfinite(m.m0) ||
        !std::isfinite(m.m1) || !std::isfinite(m.m2)) {
        throw NumericError("scv: degenerate spectrum (non-positive moments)");
    }
    return m.m0 * m.m2 / (m.m1 * m.m1) - 1.0;
}

CmeSpectralForm normalize(CmeSpectralForm form) {
    const LaurentSpectrum sp = laurent_spectrum(form.phases);
    const CmeMoments m = cme_moments(sp, form.omega);
    if (!(m.m0 > 1e-300) || !(m.m1 > 0.0)) throw NumericError("normalize: degenerate spectrum");
    form.lambda = m.m1 / m.m0;
    form.c = form.lambda / m.m0;
    return form;
}

CoefficientSet expand_spectral_form(const CmeSpectralForm& form) {
    const int n = form.n;
    const LaurentSpectrum sp = laurent_spectrum(form.phases);
    CoefficientSet out;
    out.order_n = n;
    out.method_tag = MethodTag::Cme;
    out.dominant_real_part = form.lambda;
    out.nodes.resize(2 * n + 1);
    out.weights.resize(2 * n + 1);
    out.nodes[0] = Complex(form.lambda, 0.0);
    out.weights[0] = form.c * sp.harmonic(0);
    for (int k = 1; k <= n; ++k) {
        out.nodes[k] = form.lambda * Complex(1.0, k * form.omega);
        out.weights[k] = form.c * sp.harmonic(-k);
        out.nodes[2 * n - k + 1] = std::conj(out.nodes[k]);
        out.weights[2 * n - k + 1] = std::conj(out.weights[k]);
    }
    return out;
}

std::vector<double> cme_zeros(const CmeSpectralForm& form, double t_max) {
    std::vector<double> base(form.phases.begin(), form.phases.end());
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-14; }),
               base.end());
    std::vector<double> zeros;
    const double freq = form.omega * form.lambda;
    for (int m = 0;; ++m) {
        bool any = false;
        for (double phi : base) {
            const double t = (phi + M_PI + kTwoPi * m) / freq;
            if (t <= 0.0) continue;
            if (t > t_max) continue;
            zeros.push_back(t);
            any = true;
        }
        if (!any && (kTwoPi * m + M_PI) / freq > t_max) break;
    }
    std::sort(zeros.begin(), zeros.end());
    return zeros;
}

}  // namespace nilt
