#pragma once

#include <cmath>
#include <vector>

namespace dlscatter {

/// Bisection on a bracketing interval [lo, hi] with f(lo) * f(hi) <= 0.
template <class F>
double bisect(F&& f, double lo, double hi, double xtol = 1e-12) {
    double flo = f(lo);
    if (flo == 0.0)
        return lo;
    for (int it = 0; it < 200 && hi - lo > xtol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if (fmid == 0.0)
            return mid;
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Roots of f on [lo, hi] found by a uniform sign scan over `cells` subintervals
/// followed by bisection inside each bracketing cell. Roots closer together
/// than one cell are not resolved.
template <class F>
std::vector<double> scan_roots(F&& f, double lo, double hi, int cells, double xtol = 1e-12) {
    std::vector<double> roots;
    const double h = (hi - lo) / cells;
    double a = lo;
    double fa = f(a);
    for (int i = 1; i <= cells; ++i) {
        const double b = (i == cells) ? hi : lo + i * h;
        const double fb = f(b);
        if (fa == 0.0) {
            roots.push_back(a);
        } else if (fb != 0.0 && (fa < 0.0) != (fb < 0.0)) {
            roots.push_back(bisect(f, a, b, xtol));
        }
        a = b;
        fa = fb;
    }
    if (fa == 0.0)
        roots.push_back(a);
    return roots;
}

} // namespace dlscatter
