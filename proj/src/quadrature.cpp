#include "nilt/quadrature.hpp"

#include "nilt/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nilt {

namespace {

// Gauss-Kronrod (7,15) nodes/weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEval {
    double kronrod;
    double gauss;
    long evals;
};

PanelEval gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double resk = 0.0, resg = 0.0;
    const double fc = f(c);
    resk += kWgk[7] * fc;
    resg += kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = half * kXgk[j];
        const double f1 = f(c - x);
        const double f2 = f(c + x);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    return {resk * half, resg * half, 15};
}

void refine(const std::function<double(double)>& f, double a, double b, double tol,
            int depth, int max_depth, QuadResult& acc) {
    const PanelEval pe = gk15(f, a, b);
    acc.evaluations += pe.evals;
    const double err = std::abs(pe.kronrod - pe.gauss);
    if (err <= tol || depth >= max_depth) {
        acc.value += pe.kronrod;
        acc.error_estimate += err;
        if (depth >= max_depth && err > tol) {
            std::ostringstream os;
            os << "quadrature did not converge: panel [" << a << ", " << b
               << "] error estimate " << err << " exceeds tolerance " << tol;
            throw NumericError(os.str());
        }
        return;
    }
    const double m = 0.5 * (a + b);
    refine(f, a, m, 0.5 * tol, depth + 1, max_depth, acc);
    refine(f, m, b, 0.5 * tol, depth + 1, max_depth, acc);
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                              double abs_tol, int max_depth) {
    QuadResult acc;
    if (lo == hi) return acc;
    refine(f, lo, hi, abs_tol, 0, max_depth, acc);
    return acc;
}

QuadResult integrate_panels(const std::function<double(double)>& f,
                            const std::vector<double>& boundaries, double abs_tol,
                            int max_depth) {
    QuadResult acc;
    if (boundaries.size() < 2) return acc;
    const double tol_each = abs_tol / static_cast<double>(boundaries.size() - 1);
    for (size_t i = 0; i + 1 < boundaries.size(); ++i) {
        if (boundaries[i + 1] <= boundaries[i]) continue;
        refine(f, boundaries[i], boundaries[i + 1], tol_each, 0, max_depth, acc);
    }
    return acc;
}

}  // namespace nilt
