#pragma once

// Order-by-order corrections to the phase shift and the wavefunction about a
// constant reference well, v = -v0 + lambda v1 on [0,1].
//
// The j-th wavefunction correction solves
//     y_j'' - (-v0 - k^2) y_j = v1 y_{j-1}
// and is built by variation of parameters from the closed-form pair (y0, u),
// W(u, y0) = 1. Written that way the Green's function never divides by y0,
// so interior nodes of y0 are harmless.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dlscatter/errors.hpp"
#include "dlscatter/formal_series.hpp"
#include "dlscatter/potential.hpp"
#include "dlscatter/quadrature.hpp"
#include "dlscatter/square_well.hpp"

namespace dlscatter {

inline constexpr int kMaxPerturbationOrder = 10;

/// y_j sampled on the shared uniform grid.
struct CorrectionGrid {
    int order = 0;
    UniformGrid grid{2001};
    std::vector<double> ys;
};

struct PerturbOptions {
    std::size_t grid_size = 2001;
    /// Overrides the mean-depth prescription for the reference well.
    std::optional<double> reference_depth;
    /// Interior ODE residual bound, relative to max |v1 y_{j-1}|.
    double residual_tol = 1e-6;
    UnwrapOptions unwrap;
};

struct PerturbationResult {
    double k = 0.0;
    int order = 0;
    WellDepth reference_depth;
    std::vector<double> I;            ///< sine-series coefficients I_1..I_J
    std::vector<double> deltas;       ///< delta_0..delta_J
    std::vector<double> Cs;           ///< C_1..C_J
    std::vector<double> partial_sums; ///< delta_0 + ... + delta_j, j = 0..J
    std::vector<CorrectionGrid> corrections; ///< y_0..y_J
};

inline CorrectionGrid sample_y0(const SquareWellBasis& basis, const UniformGrid& grid) {
    return {0, grid, grid.sample([&](double x) { return basis.y0(x); })};
}

/// v1 = v + v0 on the grid, using the polynomial value at x = 1.
inline std::vector<double> sample_perturbation(const PolynomialPotential& p, WellDepth v0,
                                               const UniformGrid& grid) {
    return grid.sample([&](double x) { return p.interior(x) + v0.value; });
}

namespace detail {

inline void check_same_grid(std::span<const double> v1, const CorrectionGrid& y) {
    if (v1.size() != y.ys.size() || y.grid.size() != y.ys.size())
        throw GridMismatch("perturbation and correction sampled on different grids (" +
                           std::to_string(v1.size()) + " vs " + std::to_string(y.ys.size()) + ")");
}

inline std::vector<double> source_term(std::span<const double> v1, const CorrectionGrid& y_prev) {
    std::vector<double> s(v1.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = v1[i] * y_prev.ys[i];
    return s;
}

/// Particular solution u(x) int_0^x y0 s - y0(x) int_1^x u s, and int_0^1 y0 s.
struct Particular {
    std::vector<double> ys;
    double y0_source_integral = 0.0;
};

inline Particular particular_solution(const SquareWellBasis& basis, const UniformGrid& grid,
                                      std::span<const double> s) {
    const std::size_t n = grid.size();
    std::vector<double> y0s(n), us(n), y0v(n), uv(n);
    for (std::size_t i = 0; i < n; ++i) {
        y0v[i] = basis.y0(grid[i]);
        uv[i] = basis.u(grid[i]);
        y0s[i] = y0v[i] * s[i];
        us[i] = uv[i] * s[i];
    }
    const auto from_origin = cumulative_simpson(y0s, grid.step());
    const auto u_int = cumulative_simpson(us, grid.step());
    Particular out;
    out.ys.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.ys[i] = uv[i] * from_origin[i] - y0v[i] * (u_int[i] - u_int[n - 1]);
    out.y0_source_integral = from_origin[n - 1];
    return out;
}

inline void check_residual(const SquareWellBasis& basis, const UniformGrid& grid,
                           std::span<const double> y, std::span<const double> s, int order,
                           double tol) {
    const std::size_t n = grid.size();
    const double h = grid.step();
    const double q0 = -basis.depth().value - basis.k() * basis.k();
    double smax = 0.0, ymax = 0.0, worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(y[i]))
            throw ResidualCheckFailure("correction of order " + std::to_string(order) +
                                       " is not finite at x = " + detail::num(grid[i]));
        smax = std::max(smax, std::abs(s[i]));
        ymax = std::max(ymax, std::abs(y[i]));
    }
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const double ypp =
            (-y[i - 2] + 16.0 * y[i - 1] - 30.0 * y[i] + 16.0 * y[i + 1] - y[i + 2]) / (12.0 * h * h);
        worst = std::max(worst, std::abs(ypp - q0 * y[i] - s[i]));
    }
    // the stencil itself cannot resolve better than rounding in y / h^2
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * ymax / (h * h);
    if (worst > tol * smax + floor)
        throw ResidualCheckFailure("order " + std::to_string(order) + " residual " +
                                   detail::num(worst) + " exceeds " +
                                   detail::num(tol * smax + floor) +
                                   "; increase the grid size");
}

} // namespace detail

/// I_j = -k int_0^1 v1 y_{j-1} y0 dx, composite Simpson on the shared grid.
inline double sine_coefficient(const SquareWellBasis& basis, std::span<const double> v1,
                               const CorrectionGrid& y_prev) {
    detail::check_same_grid(v1, y_prev);
    const auto& grid = y_prev.grid;
    std::vector<double> f(grid.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = v1[i] * y_prev.ys[i] * basis.y0(grid[i]);
    return -basis.k() * simpson(f, grid.step());
}

/// Coefficient of y0 in y_j once the particular solution is anchored at the
/// origin, given the cos(Delta delta) part of C_j. Equals C_j - G u(1)/y0(1),
/// G = int_0^1 y0 v1 y_{j-1}, with the cot(k + delta0) pieces cancelled
/// analytically so it stays finite where y0(1) = 0.
inline double homogeneous_coefficient(const SquareWellBasis& basis, double cos_part,
                                      double y0_source_integral) {
    const double k = basis.k(), K = basis.K(), B = basis.B(), th = basis.theta();
    const double v0 = basis.depth().value;
    return cos_part - y0_source_integral * v0 * std::sin(th) * std::cos(th) / (k * B * B * K * K);
}

namespace detail {

inline CorrectionGrid build_correction(const SquareWellBasis& basis, const CorrectionGrid& y_prev, const Particular& part,
                                       std::span<const double> s, double coeff, double tol) {
    CorrectionGrid out{y_prev.order + 1, y_prev.grid, part.ys};
    for (std::size_t i = 0; i < out.ys.size(); ++i)
        out.ys[i] += coeff * basis.y0(out.grid[i]);
    check_residual(basis, out.grid, out.ys, s, out.order, tol);
    return out;
}

} // namespace detail

/// y_j = C_j y0 + y0 int_1^x dx'/y0^2 int_0^x' v1 y_{j-1} y0, evaluated as
/// (C_j - G u(1)/y0(1)) y0 + u int_0^x y0 s - y0 int_1^x u s with s = v1 y_{j-1}.
/// Needs y0(1) != 0; perturb() goes through homogeneous_coefficient instead.
inline CorrectionGrid next_correction(const SquareWellBasis& basis, std::span<const double> v1,
                                      const CorrectionGrid& y_prev, double C_j,
                                      double residual_tol = 1e-6) {
    detail::check_same_grid(v1, y_prev);
    const auto s = detail::source_term(v1, y_prev);
    const auto part = detail::particular_solution(basis, y_prev.grid, s);
    const double coeff = C_j - part.y0_source_integral * basis.u(1.0) / basis.y0(1.0);
    return detail::build_correction(basis, y_prev, part, s, coeff, residual_tol);
}

inline PerturbationResult perturb(const PolynomialPotential& p, double k, int J,
                                  const PerturbOptions& opt = {}) {
    if (!(k > 0.0))
        throw std::invalid_argument("perturb: k must be positive");
    if (J < 0 || J > kMaxPerturbationOrder)
        throw std::invalid_argument("perturb: order must be in [0, " +
                                    std::to_string(kMaxPerturbationOrder) + "]");
    if (opt.grid_size < 201)
        throw std::invalid_argument("perturb: grid size must be at least 201");

    const WellDepth v0 = opt.reference_depth ? WellDepth(*opt.reference_depth) : mean_depth(p);
    const auto basis = make_basis(v0, k, opt.unwrap);
    const UniformGrid grid(opt.grid_size);
    const auto v1 = sample_perturbation(p, v0, grid);

    PerturbationResult r;
    r.k = k;
    r.order = J;
    r.reference_depth = v0;
    r.deltas.push_back(basis.delta0());
    r.partial_sums.push_back(basis.delta0());
    r.corrections.push_back(sample_y0(basis, grid));

    for (int j = 1; j <= J; ++j) {
        const auto& y_prev = r.corrections.back();
        r.I.push_back(sine_coefficient(basis, v1, y_prev));
        const auto d = invert_sine_series(r.I);
        r.deltas.push_back(d.back());
        r.partial_sums.push_back(r.partial_sums.back() + d.back());
        r.Cs.push_back(C_series(d, k, basis.delta0()).back());

        series::Series dd(j + 1, 0.0);
        std::copy(d.begin(), d.end(), dd.begin() + 1);
        const double cos_part = series::sin_cos(dd, j).cos[j];

        const auto s = detail::source_term(v1, y_prev);
        const auto part = detail::particular_solution(basis, grid, s);
        const double coeff = homogeneous_coefficient(basis, cos_part, part.y0_source_integral);
        r.corrections.push_back(
            detail::build_correction(basis, y_prev, part, s, coeff, opt.residual_tol));
    }
    return r;
}

} // namespace dlscatter
