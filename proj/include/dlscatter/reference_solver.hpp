#pragma once

// Independent oracle for the full potential: Taylor-series solution of
// y'' = (v - eps) y about x = 0, plus a fixed-step RK4 integrator used only to
// cross-check the series.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dlscatter/errors.hpp"
#include "dlscatter/potential.hpp"
#include "dlscatter/roots.hpp"

namespace dlscatter {

struct SeriesOptions {
    std::size_t terms = 60;
    std::size_t max_terms = 512;
    double tol = 1e-14;
    /// Largest tolerated ratio of sum_j j |c_j| to |y(1)| + |y'(1)|; beyond it
    /// cancellation in the alternating sum has eaten more than ~8 digits.
    double max_cancellation = 1e8;
};

/// Regular solution y(0) = 0, y'(0) = 1 as a truncated power series.
struct SeriesSolution {
    double epsilon = 0.0;
    std::vector<double> coeffs; ///< c_0 .. c_T
    double y1 = 0.0;            ///< y(1)
    double yp1 = 0.0;           ///< y'(1)
    double tail = 0.0;          ///< |last retained terms|, derivative-weighted
    double scale = 1.0;         ///< max(1, max_j |c_j|)
    double magnitude = 0.0;     ///< sum_j j |c_j|

    double value(double x) const noexcept {
        double acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    double derivative(double x) const noexcept {
        double acc = 0.0;
        for (std::size_t j = coeffs.size() - 1; j >= 1; --j)
            acc = acc * x + static_cast<double>(j) * coeffs[j];
        return acc;
    }
};

namespace detail {

inline SeriesSolution series_terms(std::span<const double> w, double epsilon, std::size_t T) {
    SeriesSolution s;
    s.epsilon = epsilon;
    s.coeffs.assign(T + 1, 0.0);
    auto& c = s.coeffs;
    c[1] = 1.0;
    // (j+2)(j+1) c_{j+2} = sum_m w_m c_{j-m} - eps c_j
    for (std::size_t j = 0; j + 2 <= T; ++j) {
        double rhs = -epsilon * c[j];
        const std::size_t mmax = std::min(j, w.size() - 1);
        for (std::size_t m = 0; m <= mmax; ++m)
            rhs += w[m] * c[j - m];
        c[j + 2] = rhs / static_cast<double>((j + 2) * (j + 1));
    }
    double scale = 0.0;
    for (std::size_t j = 0; j <= T; ++j) {
        s.y1 += c[j];
        s.yp1 += static_cast<double>(j) * c[j];
        s.magnitude += static_cast<double>(j) * std::abs(c[j]);
        scale = std::max(scale, std::abs(c[j]));
    }
    // two trailing terms, since odd or even coefficients may vanish identically
    s.tail = std::max(std::abs(c[T]) * static_cast<double>(T),
                      std::abs(c[T - 1]) * static_cast<double>(T - 1));
    s.scale = std::max(scale, 1.0);
    return s;
}

} // namespace detail

/// Power-series solution with c_1 = 1. The truncation doubles until the last
/// terms fall below opt.tol times the largest coefficient; past opt.max_terms it throws.
inline SeriesSolution series_solve(const PolynomialPotential& p, double epsilon,
                                   const SeriesOptions& opt = {}) {
    if (opt.terms < 10)
        throw std::invalid_argument("series_solve: need at least 10 terms");
    for (std::size_t T = opt.terms;; T *= 2) {
        T = std::min(T, opt.max_terms);
        auto s = detail::series_terms(p.coeffs(), epsilon, T);
        if (!std::isfinite(s.y1) || !std::isfinite(s.yp1))
            throw NonConvergence("series_solve: non-finite boundary values at eps = " +
                                 detail::num(epsilon));
        if (s.tail <= opt.tol * s.scale) {
            if (s.magnitude > opt.max_cancellation * (std::abs(s.y1) + std::abs(s.yp1)))
                throw NonConvergence("series_solve: cancellation too severe at eps = " +
                                     detail::num(epsilon) + " (sum of terms " +
                                     detail::num(s.magnitude) + ")");
            return s;
        }
        if (T >= opt.max_terms)
            throw NonConvergence("series_solve: tail " + detail::num(s.tail) +
                                 " above tolerance at " + std::to_string(T) + " terms");
    }
}

/// Number of sign changes of y on (0,1]. Consecutive zeros of y are at least
/// pi / sqrt(max(eps - v)) apart, so the sampling is chosen finer than that.
inline int count_interior_nodes(const SeriesSolution& s, const PolynomialPotential& p) {
    const double qmax = std::max(0.0, s.epsilon + max_depth(p));
    const int cells = std::max(512, static_cast<int>(16.0 * std::sqrt(qmax)));
    int nodes = 0;
    double prev = s.value(1.0 / cells); // y > 0 just right of the origin
    for (int i = 2; i <= cells; ++i) {
        const double y = i == cells ? s.y1 : s.value(static_cast<double>(i) / cells);
        if (y != 0.0 && prev != 0.0 && (y < 0.0) != (prev < 0.0))
            ++nodes;
        if (y != 0.0)
            prev = y;
    }
    return nodes;
}

/// Exact phase shift of p at wavenumber k on the branch with delta(inf) = 0.
///
/// The continuous phase phi(x) of (y', k y) starts at 0 and crosses each
/// multiple of pi upward exactly at a node of y, so phi(1) is the node count
/// times pi plus the angle of (y'(1), k y(1)) reduced to [0, pi). Then
/// delta = phi(1) - k, matching tan(k + delta) = k y(1) / y'(1).
inline double phase_shift_oracle(const PolynomialPotential& p, double k,
                                 const SeriesOptions& opt = {}) {
    if (!(k > 0.0))
        throw std::invalid_argument("phase_shift_oracle: k must be positive");
    const auto s = series_solve(p, k * k, opt);
    constexpr double pi = std::numbers::pi;
    double alpha = std::atan2(k * s.y1, s.yp1);
    if (alpha < 0.0)
        alpha += pi;
    if (alpha >= pi)
        alpha -= pi;
    const int nodes = count_interior_nodes(s, p);
    return nodes * pi + alpha - k;
}

struct BoundStateSet {
    std::vector<double> kappas;   ///< ascending in energy, i.e. descending kappa
    std::vector<double> energies; ///< -kappa^2

    std::size_t size() const noexcept { return kappas.size(); }
    bool empty() const noexcept { return kappas.empty(); }
};

/// y'(1) + kappa y(1) at eps = -kappa^2; zero at a bound state.
inline double bound_state_mismatch(const PolynomialPotential& p, double kappa,
                                   const SeriesOptions& opt = {}) {
    const auto s = series_solve(p, -kappa * kappa, opt);
    return s.yp1 + kappa * s.y1;
}

inline double default_kappa_max(const PolynomialPotential& p) {
    return std::sqrt(max_depth(p)) + 1.0;
}

inline BoundStateSet bound_states(const PolynomialPotential& p, double kappa_max,
                                  const SeriesOptions& opt = {}) {
    if (!(kappa_max > 0.0))
        throw std::invalid_argument("bound_states: kappa_max must be positive");
    auto f = [&](double kappa) { return bound_state_mismatch(p, kappa, opt); };
    auto roots = scan_roots(f, 1e-6, kappa_max, 200, 1e-12);
    std::sort(roots.begin(), roots.end(), std::greater<>());
    BoundStateSet out;
    for (double kappa : roots) {
        out.kappas.push_back(kappa);
        out.energies.push_back(-kappa * kappa);
    }
    return out;
}

inline BoundStateSet bound_states(const PolynomialPotential& p, const SeriesOptions& opt = {}) {
    return bound_states(p, default_kappa_max(p), opt);
}

struct BoundaryValues {
    double y1 = 0.0;
    double yp1 = 0.0;
};

/// Classical RK4 for y'' = (v - eps) y, y(0) = 0, y'(0) = 1, fixed step on [0,1].
inline BoundaryValues rk_check(const PolynomialPotential& p, double epsilon,
                               std::size_t steps = 100000) {
    const double h = 1.0 / static_cast<double>(steps);
    double y = 0.0, yp = 1.0;
    auto q = [&](double x) { return p.interior(x) - epsilon; };
    for (std::size_t i = 0; i < steps; ++i) {
        const double x = static_cast<double>(i) * h;
        const double qa = q(x), qm = q(x + 0.5 * h), qb = q(x + h);
        const double k1y = yp, k1p = qa * y;
        const double k2y = yp + 0.5 * h * k1p, k2p = qm * (y + 0.5 * h * k1y);
        const double k3y = yp + 0.5 * h * k2p, k3p = qm * (y + 0.5 * h * k2y);
        const double k4y = yp + h * k3p, k4p = qb * (y + h * k3y);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        yp += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    }
    return {y, yp};
}

} // namespace dlscatter
