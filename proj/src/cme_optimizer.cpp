#include "nilt/cme.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace nilt {

std::vector<int> spread_order(const std::vector<double>& phases);  // cme.cpp

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// objective state: x = (omega, phi_1..phi_n), value = SCV, analytic gradient
struct Objective {
    long evaluations = 0;
    long budget = 200000;

    double value(const std::vector<double>& x) {
        ++evaluations;
        const int n = static_cast<int>(x.size()) - 1;
        std::vector<double> ph(x.begin() + 1, x.end());
        const double omega = x[0];
        if (!(omega > 1e-4) || omega > 10.0) return 1e6;
        LaurentSpectrum sp = laurent_spectrum(ph);
        CmeMoments m = cme_moments(sp, omega);
        if (!(m.m0 > 0.0) || !(m.m1 > 0.0) || !(m.m2 > 0.0) || !std::isfinite(m.m2)) return 1e6;
        (void)n;
        return m.m0 * m.m2 / (m.m1 * m.m1) - 1.0;
    }

    // value + gradient via prefix/suffix Laurent products
    double value_grad(const std::vector<double>& x, std::vector<double>& grad) {
        ++evaluations;
        const int n = static_cast<int>(x.size()) - 1;
        grad.assign(n + 1, 0.0);
        const double omega = x[0];
        if (!(omega > 1e-4) || omega > 10.0) return 1e6;
        std::vector<double> ph(x.begin() + 1, x.end());
        const std::vector<int> perm = spread_order(ph);

        auto factor = [&](int idx) {
            const Complex up = 0.5 * std::exp(Complex(0.0, -ph[idx]));
            return std::array<Complex, 3>{up, Complex(1.0, 0.0), std::conj(up)};
        };
        auto convolve3 = [](const std::vector<Complex>& a, const std::array<Complex, 3>& f) {
            std::vector<Complex> out(a.size() + 2, Complex(0.0, 0.0));
            for (size_t j = 0; j < a.size(); ++j) {
                out[j] += a[j] * f[0];
                out[j + 1] += a[j] * f[1];
                out[j + 2] += a[j] * f[2];
            }
            return out;
        };
        auto convolve = [](const std::vector<Complex>& a, const std::vector<Complex>& b) {
            std::vector<Complex> out(a.size() + b.size() - 1, Complex(0.0, 0.0));
            for (size_t i = 0; i < a.size(); ++i) {
                for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
            }
            return out;
        };

        std::vector<std::vector<Complex>> pre(n + 1), suf(n + 1);
        pre[0] = {Complex(1.0, 0.0)};
        for (int j = 0; j < n; ++j) pre[j + 1] = convolve3(pre[j], factor(perm[j]));
        suf[n] = {Complex(1.0, 0.0)};
        for (int j = n - 1; j >= 0; --j) suf[j] = convolve3(suf[j + 1], factor(perm[j]));
        // pre[n] is the full (scaled) spectrum
        const std::vector<Complex>& dfull = pre[n];

        auto moments_of = [&](const std::vector<Complex>& d, int half) {
            double mm[3] = {0.0, 0.0, 0.0};
            for (int i = 0; i < static_cast<int>(d.size()); ++i) {
                const int k = half - i;
                const Complex den(1.0, -k * omega);
                Complex g = d[i] / den;
                mm[0] += g.real();
                g /= den;
                mm[1] += g.real();
                g /= den;
                mm[2] += g.real();
            }
            return std::array<double, 3>{mm[0], mm[1], 2.0 * mm[2]};
        };
        const auto m = moments_of(dfull, n);
        if (!(m[0] > 0.0) || !(m[1] > 0.0) || !(m[2] > 0.0) || !std::isfinite(m[2])) return 1e6;
        const double s = m[0] * m[2] / (m[1] * m[1]) - 1.0;
        const double w0 = m[2] / (m[1] * m[1]);
        const double w1 = -2.0 * m[0] * m[2] / (m[1] * m[1] * m[1]);
        const double w2 = m[0] / (m[1] * m[1]);

        // d m_p / d omega
        {
            double dm[3] = {0.0, 0.0, 0.0};
            for (int i = 0; i < static_cast<int>(dfull.size()); ++i) {
                const int k = n - i;
                const Complex den(1.0, -k * omega);
                const Complex ik(0.0, static_cast<double>(k));
                dm[0] += (dfull[i] * ik / (den * den)).real();
                dm[1] += (dfull[i] * 2.0 * ik / (den * den * den)).real();
                dm[2] += (dfull[i] * 6.0 * ik / (den * den * den * den)).real();
            }
            grad[0] = w0 * dm[0] + w1 * dm[1] + w2 * dm[2];
        }
        // d m_p / d phi_j
        for (int jj = 0; jj < n; ++jj) {
            const int j = perm[jj];
            const Complex dup = Complex(0.0, -0.5) * std::exp(Complex(0.0, -ph[j]));
            const std::array<Complex, 3> dF{dup, Complex(0.0, 0.0), std::conj(dup)};
            const std::vector<Complex> dd = convolve(convolve3(pre[jj], dF), suf[jj + 1]);
            double dm[3] = {0.0, 0.0, 0.0};
            const int half = n;  // dd has the same harmonic span as dfull
            for (int i = 0; i < static_cast<int>(dd.size()); ++i) {
                const int k = half - i;
                const Complex den(1.0, -k * omega);
                Complex g = dd[i] / den;
                dm[0] += g.real();
                g /= den;
                dm[1] += g.real();
                g /= den;
                dm[2] += 2.0 * g.real();
            }
            grad[j + 1] = w0 * dm[0] + w1 * dm[1] + w2 * dm[2];
        }
        return s;
    }
};

double lbfgs_minimize(Objective& obj, std::vector<double>& x, int max_iters) {
    const int dim = static_cast<int>(x.size());
    const int hist = 12;
    std::vector<std::vector<double>> s_hist, y_hist;
    std::vector<double> rho_hist;
    std::vector<double> g(dim), g_new(dim), xn(dim), q(dim), dir(dim);
    double f = obj.value_grad(x, g);
    if (f >= 1e6) return f;
    for (int iter = 0; iter < max_iters && obj.evaluations < obj.budget; ++iter) {
        // two-loop recursion
        q = g;
        std::vector<double> alpha(s_hist.size());
        for (int i = static_cast<int>(s_hist.size()) - 1; i >= 0; --i) {
            double sq = 0.0;
            for (int d = 0; d < dim; ++d) sq += s_hist[i][d] * q[d];
            alpha[i] = rho_hist[i] * sq;
            for (int d = 0; d < dim; ++d) q[d] -= alpha[i] * y_hist[i][d];
        }
        double gamma = 1.0;
        if (!s_hist.empty()) {
            double sy = 0.0, yy = 0.0;
            const auto& sl = s_hist.back();
            const auto& yl = y_hist.back();
            for (int d = 0; d < dim; ++d) {
                sy += sl[d] * yl[d];
                yy += yl[d] * yl[d];
            }
            if (yy > 0.0) gamma = sy / yy;
        }
        for (int d = 0; d < dim; ++d) q[d] *= gamma;
        for (size_t i = 0; i < s_hist.size(); ++i) {
            double yq = 0.0;
            for (int d = 0; d < dim; ++d) yq += y_hist[i][d] * q[d];
            const double beta = rho_hist[i] * yq;
            for (int d = 0; d < dim; ++d) q[d] += s_hist[i][d] * (alpha[i] - beta);
        }
        for (int d = 0; d < dim; ++d) dir[d] = -q[d];
        double g_dot_dir = 0.0;
        for (int d = 0; d < dim; ++d) g_dot_dir += g[d] * dir[d];
        if (g_dot_dir >= 0.0) {  // not a descent direction; fall back to steepest
            for (int d = 0; d < dim; ++d) dir[d] = -g[d];
            g_dot_dir = 0.0;
            for (int d = 0; d < dim; ++d) g_dot_dir += g[d] * dir[d];
            if (g_dot_dir >= 0.0) break;
        }
        // backtracking Armijo
        double t = 1.0;
        double f_new = 0.0;
        bool accepted = false;
        for (int bt = 0; bt < 50; ++bt) {
            for (int d = 0; d < dim; ++d) xn[d] = x[d] + t * dir[d];
            f_new = obj.value_grad(xn, g_new);
            if (f_new <= f + 1e-4 * t * g_dot_dir && f_new < 1e6) {
                accepted = true;
                break;
            }
            t *= 0.5;
            if (obj.evaluations >= obj.budget) break;
        }
        if (!accepted) break;
        std::vector<double> s_vec(dim), y_vec(dim);
        double sy = 0.0;
        for (int d = 0; d < dim; ++d) {
            s_vec[d] = xn[d] - x[d];
            y_vec[d] = g_new[d] - g[d];
            sy += s_vec[d] * y_vec[d];
        }
        if (sy > 1e-18) {
            s_hist.push_back(std::move(s_vec));
            y_hist.push_back(std::move(y_vec));
            rho_hist.push_back(1.0 / sy);
            if (static_cast<int>(s_hist.size()) > hist) {
                s_hist.erase(s_hist.begin());
                y_hist.erase(y_hist.begin());
                rho_hist.erase(rho_hist.begin());
            }
        }
        const double df = f - f_new;
        x = xn;
        f = f_new;
        g = g_new;
        double gmax = 0.0;
        for (int d = 0; d < dim; ++d) gmax = std::max(gmax, std::abs(g[d]));
        if (gmax < 1e-12 * std::max(1.0, std::abs(f))) break;
        if (df < 1e-18 * (std::abs(f) + 1e-30) && iter > 10) break;
    }
    return f;
}

CmeSpectralForm form_from_x(int n, const std::vector<double>& x) {
    CmeSpectralForm form;
    form.n = n;
    double omega = x[0];
    std::vector<double> ph(x.begin() + 1, x.end());
    if (omega < 0.0) {  // family symmetry: (omega, phi) ~ (-omega, -phi)
        omega = -omega;
        for (double& p : ph) p = -p;
    }
    for (double& p : ph) {
        p = std::fmod(p, kTwoPi);
        if (p < 0.0) p += kTwoPi;
    }
    std::sort(ph.begin(), ph.end());
    form.omega = omega;
    form.phases = std::move(ph);
    return normalize(form);
}

struct LobeCells {
    double z_lo = 0.0, z_hi = 0.0, f_left = 0.0, f_main = 0.0, f_right = 0.0;
};

bool lobe_cells(const CmeSpectralForm& form, LobeCells& out) {
    const std::vector<double> zeros = cme_zeros(form, 25.0);
    double lo = -1.0, hi = -1.0;
    for (double z : zeros) {
        if (z <= 1.0) lo = z;
        if (z > 1.0) {
            hi = z;
            break;
        }
    }
    if (lo <= 0.0 || hi <= 0.0) return false;
    const CoefficientSet cs = expand_spectral_form(form);
    out.z_lo = lo;
    out.z_hi = hi;
    out.f_left = weight_integral(cs, 0.0, lo);
    out.f_main = weight_integral(cs, lo, hi);
    out.f_right = weight_integral(cs, hi, std::numeric_limits<double>::infinity());
    return true;
}

bool admissible(const CmeSpectralForm& form, bool require_main_lobe) {
    if (form.n < 4 || !require_main_lobe) return true;
    LobeCells c;
    if (!lobe_cells(form, c)) return false;
    return c.f_main >= 0.99 && c.f_main <= 1.0 + 1e-9 && c.f_left > 2e-4 && c.f_right > 5e-5;
}

std::vector<double> psi_of(const CmeSpectralForm& form) {
    std::vector<double> psi;
    psi.reserve(form.phases.size());
    for (double p : form.phases) {
        double v = std::fmod(p + M_PI, kTwoPi);
        if (v < 0.0) v += kTwoPi;
        psi.push_back(v);
    }
    std::sort(psi.begin(), psi.end());
    return psi;
}

// allocate phases over gap-separated segments proportionally, interpolate inside
std::vector<double> gap_aware_resample(const std::vector<double>& psi, int n_new) {
    const int n_old = static_cast<int>(psi.size());
    std::vector<double> d(n_old - 1);
    for (int i = 0; i + 1 < n_old; ++i) d[i] = psi[i + 1] - psi[i];
    std::vector<double> sorted_d = d;
    std::sort(sorted_d.begin(), sorted_d.end());
    const double med = sorted_d[sorted_d.size() / 2];
    std::vector<std::vector<double>> segs;
    segs.emplace_back();
    segs.back().push_back(psi[0]);
    for (int i = 0; i + 1 < n_old; ++i) {
        if (d[i] > 2.5 * med) segs.emplace_back();
        segs.back().push_back(psi[i + 1]);
    }
    std::vector<int> alloc(segs.size());
    int total = 0;
    for (size_t s = 0; s < segs.size(); ++s) {
        alloc[s] = std::max(1, static_cast<int>(std::lround(
                                   static_cast<double>(segs[s].size()) / n_old * n_new)));
        total += alloc[s];
    }
    while (total != n_new) {
        const auto it = std::max_element(alloc.begin(), alloc.end());
        *it += (total < n_new) ? 1 : -1;
        total += (total < n_new) ? 1 : -1;
    }
    std::vector<double> out;
    out.reserve(n_new);
    for (size_t s = 0; s < segs.size(); ++s) {
        const auto& seg = segs[s];
        if (seg.size() == 1) {
            for (int i = 0; i < alloc[s]; ++i) out.push_back(seg[0]);
            continue;
        }
        for (int i = 0; i < alloc[s]; ++i) {
            const double q = alloc[s] == 1 ? 0.5
                                           : static_cast<double>(i) / (alloc[s] - 1);
            const double pos = q * (seg.size() - 1);
            const int j = std::min(static_cast<int>(pos), static_cast<int>(seg.size()) - 2);
            const double fr = pos - j;
            out.push_back(seg[j] * (1.0 - fr) + seg[j + 1] * fr);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct Candidate {
    std::vector<double> x;
    double value = 1e9;
};

Candidate polish_candidate(Objective& obj, std::vector<double> x0, int n,
                           bool require_main_lobe) {
    Candidate cand;
    const double v = lbfgs_minimize(obj, x0, 4000);
    if (v >= 1e6) return cand;
    const CmeSpectralForm form = form_from_x(n, x0);
    if (!admissible(form, require_main_lobe)) return cand;
    cand.x = std::move(x0);
    cand.value = v;
    return cand;
}

Candidate multistart(Objective& obj, int n, bool require_main_lobe) {
    Candidate best;
    const double gammas[] = {0.8, 1.0, 1.25};
    const double rhos[] = {0.88, 0.92, 0.96};
    for (double gamma : gammas) {
        for (double rho : rhos) {
            std::vector<double> x0(n + 1);
            for (int j = 1; j <= n; ++j) {
                const double q = static_cast<double>(j) / (n + 0.5);
                x0[j] = kTwoPi * rho * std::pow(q, gamma) - M_PI;
            }
            double best_w = 0.0, best_v = 1e9;
            for (int i = 0; i < 45; ++i) {
                x0[0] = 0.1 + i * (1.1 / 44.0);
                const double v = obj.value(x0);
                if (v < best_v) {
                    best_v = v;
                    best_w = x0[0];
                }
            }
            if (best_v > 0.5) continue;
            x0[0] = best_w;
            Candidate cand = polish_candidate(obj, x0, n, require_main_lobe);
            if (cand.value < best.value) best = std::move(cand);
        }
    }
    return best;
}

Candidate continue_up(Objective& obj, const CmeSpectralForm& prev, int n,
                      bool require_main_lobe) {
    const std::vector<double> psi = gap_aware_resample(psi_of(prev), n);
    std::vector<double> x0(n + 1);
    for (int j = 0; j < n; ++j) x0[j + 1] = psi[j] - M_PI;
    std::vector<std::pair<double, double>> scan;
    for (int i = 0; i < 120; ++i) {
        x0[0] = 0.15 + i * (0.85 / 119.0);
        scan.emplace_back(obj.value(x0), x0[0]);
    }
    std::sort(scan.begin(), scan.end());
    Candidate best;
    for (int i = 0; i < 8 && i < static_cast<int>(scan.size()); ++i) {
        x0[0] = scan[i].second;
        Candidate cand = polish_candidate(obj, x0, n, require_main_lobe);
        if (cand.value < best.value) best = std::move(cand);
        if (best.value < 1e6 && i >= 2) break;  // good enough; keep deterministic cost low
    }
    return best;
}

// coordinate parabolic polish until the +-1e-6 stationarity probe passes
bool stationarity_polish(Objective& obj, std::vector<double>& x, double& f) {
    const double h = 1e-6, gain = 1e-10;
    for (int sweep = 0; sweep < 40; ++sweep) {
        bool improved = false;
        for (size_t i = 0; i < x.size() && obj.evaluations < obj.budget; ++i) {
            std::vector<double> xp = x, xm = x;
            xp[i] += h;
            xm[i] -= h;
            const double fp = obj.value(xp);
            const double fm = obj.value(xm);
            if (std::min(fp, fm) >= f - gain) continue;
            // parabolic step from the three samples
            const double denom = fp - 2.0 * f + fm;
            double step = (denom > 0.0) ? -0.5 * h * (fp - fm) / denom
                                        : (fp < fm ? 8.0 * h : -8.0 * h);
            step = std::clamp(step, -2000.0 * h, 2000.0 * h);
            std::vector<double> xt = x;
            xt[i] += step;
            double ft = obj.value(xt);
            while (ft >= f && std::abs(step) > 0.25 * h) {
                step *= 0.5;
                xt[i] = x[i] + step;
                ft = obj.value(xt);
            }
            if (ft < f) {
                x = xt;
                f = ft;
                improved = true;
            }
        }
        if (!improved) return true;
    }
    return false;
}

}  // namespace

OptimizeOutcome optimize_cme(int n, const OptimizerSettings& settings) {
    if (n < 1 || n > 60) throw std::invalid_argument("optimize_cme: 1 <= n <= 60");
    Objective obj;
    obj.budget = settings.max_evaluations;

    // continuation chain: multistart at the base order, then steps of <= 13%
    std::vector<int> chain{n};
    while (chain.back() > 32) {
        chain.push_back(static_cast<int>(std::ceil(chain.back() / 1.13)));
    }
    std::reverse(chain.begin(), chain.end());

    Candidate cur = multistart(obj, chain[0], settings.require_main_lobe);
    if (cur.value >= 1e6) throw NumericError("optimize_cme: multistart found no admissible minimum");
    for (size_t i = 1; i < chain.size(); ++i) {
        const CmeSpectralForm prev = form_from_x(chain[i - 1], cur.x);
        cur = continue_up(obj, prev, chain[i], settings.require_main_lobe);
        if (cur.value >= 1e6) {
            throw NumericError("optimize_cme: continuation lost the admissible basin at n=" +
                               std::to_string(chain[i]));
        }
    }
    const bool stationary = stationarity_polish(obj, cur.x, cur.value);
    OptimizeOutcome out;
    out.form = form_from_x(n, cur.x);
    out.scv_value = cur.value;
    out.evaluations = obj.evaluations;
    out.converged = stationary;
    return out;
}

}  // namespace nilt
