#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dlscatter/potential.hpp"
#include "dlscatter/roots.hpp"

namespace dlscatter {

struct UnwrapOptions {
    double k_anchor = 100.0;
    double max_step = 0.05;
    double min_step = 1e-10;
};

/// Follows a phase known only modulo pi from an anchor wavenumber, where the
/// representative of smallest magnitude is taken, to `k`. Steps are halved
/// until one full step and two half steps land on the same branch and the
/// change per step stays below pi/4.
template <class PrincipalFn>
double unwrap_from_anchor(PrincipalFn&& principal, double k, const UnwrapOptions& opt = {}) {
    constexpr double pi = std::numbers::pi;
    auto nearest = [&](double raw, double target) {
        return raw + pi * std::round((target - raw) / pi);
    };

    double kc = opt.k_anchor;
    double phase = nearest(principal(kc), 0.0);
    double h = opt.max_step;
    while (kc != k) {
        const double dir = k < kc ? -1.0 : 1.0;
        double step = std::min(h, std::abs(k - kc));
        for (;;) {
            const double k1 = kc + dir * step;
            const double full = nearest(principal(k1), phase);
            const double half = nearest(principal(kc + 0.5 * dir * step), phase);
            const double twice = nearest(principal(k1), half);
            const bool consistent = std::abs(full - twice) < 0.5 * pi &&
                                    std::abs(full - phase) < 0.25 * pi;
            if (consistent || step <= opt.min_step) {
                kc = (std::abs(k - k1) < 1e-15 * std::max(1.0, std::abs(k))) ? k : k1;
                phase = full;
                h = std::min(opt.max_step, 2.0 * step);
                break;
            }
            step *= 0.5;
        }
    }
    return phase;
}

namespace detail {

/// k + delta0 modulo pi, taken from tan(k + delta0) = k tan(K) / K.
inline double well_phase_principal(double v0, double k) {
    const double K = std::sqrt(k * k + v0);
    return std::atan2(k * std::sin(K), K * std::cos(K));
}

} // namespace detail

/// Reference-well phase shift on the branch that is continuous in k and vanishes as k -> infinity.
inline double delta0_unwrapped(WellDepth v0, double k, const UnwrapOptions& opt = {}) {
    if (!(k > 0.0))
        throw std::invalid_argument("delta0_unwrapped: k must be positive");
    if (v0.value == 0.0)
        return 0.0;
    return unwrap_from_anchor(
        [v = v0.value](double kk) { return detail::well_phase_principal(v, kk) - kk; }, k, opt);
}

/// Regular and irregular solutions of the constant well at fixed k, with
/// W(u, y0) = u' y0 - u y0' = 1 on [0,1].
class SquareWellBasis {
public:
    double k() const noexcept { return k_; }
    WellDepth depth() const noexcept { return v0_; }
    double K() const noexcept { return K_; }
    double delta0() const noexcept { return delta0_; }
    /// Amplitude of sin(Kx) in y0 inside the well.
    double B() const noexcept { return B_; }
    /// k + delta0, the asymptotic phase of y0 at x = 1.
    double theta() const noexcept { return k_ + delta0_; }

    double y0(double x) const noexcept { return B_ * std::sin(K_ * x); }
    double y0_prime(double x) const noexcept { return B_ * K_ * std::cos(K_ * x); }
    double u(double x) const noexcept { return -std::cos(K_ * x) / (B_ * K_); }
    double u_prime(double x) const noexcept { return std::sin(K_ * x) / B_; }

    friend SquareWellBasis make_basis(WellDepth v0, double k, const UnwrapOptions& opt);

private:
    double k_ = 0.0;
    WellDepth v0_;
    double K_ = 0.0;
    double delta0_ = 0.0;
    double B_ = 0.0;
};

inline SquareWellBasis make_basis(WellDepth v0, double k, const UnwrapOptions& opt = {}) {
    if (!(k > 0.0))
        throw std::invalid_argument("make_basis: k must be positive");
    SquareWellBasis b;
    b.k_ = k;
    b.v0_ = v0;
    b.K_ = std::sqrt(k * k + v0.value);
    b.delta0_ = delta0_unwrapped(v0, k, opt);
    const double theta = k + b.delta0_;
    // Both matching conditions at x = 1 give B; each is 0/0 at a zero of its denominator.
    const double den_s = k * std::sin(b.K_);
    const double den_c = b.K_ * std::cos(b.K_);
    b.B_ = std::abs(den_s) >= std::abs(den_c) ? std::sin(theta) / den_s : std::cos(theta) / den_c;
    return b;
}

/// Decay constants of the s-wave bound states of the unit-width well of depth v0.
inline std::vector<double> well_bound_kappas(WellDepth v0, int cells = 200) {
    const double v = v0.value;
    if (v <= 0.0)
        return {};
    const double kmax = std::sqrt(v);
    // q cot q + kappa, multiplied through by sin q so the scan never meets a pole
    auto f = [v](double kappa) {
        const double q = std::sqrt(std::max(0.0, v - kappa * kappa));
        return q * std::cos(q) + kappa * std::sin(q);
    };
    // q -> 0 at kappa = sqrt(v0) is a trivial zero, not a bound state
    return scan_roots(f, 0.0, kmax * (1.0 - 1e-9), cells);
}

inline int well_bound_count(WellDepth v0) {
    return static_cast<int>(well_bound_kappas(v0).size());
}

} // namespace dlscatter
