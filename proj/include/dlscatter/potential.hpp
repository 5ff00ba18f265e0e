#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dlscatter/errors.hpp"

namespace dlscatter {

/// Finite-range dimensionless potential v(x) = sum_m w_m x^m on [0,1), zero for x >= 1.
class PolynomialPotential {
public:
    explicit PolynomialPotential(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty())
            throw std::invalid_argument("PolynomialPotential: empty coefficient list");
        for (double w : coeffs_)
            if (!std::isfinite(w))
                throw std::invalid_argument("PolynomialPotential: non-finite coefficient");
    }

    std::span<const double> coeffs() const noexcept { return coeffs_; }
    std::size_t degree() const noexcept { return coeffs_.size() - 1; }

    /// Polynomial value, ignoring the cutoff. Integrals over [0,1] use this
    /// so the jump at x = 1 never enters a quadrature.
    double interior(double x) const noexcept {
        double acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    double operator()(double x) const noexcept { return x < 1.0 ? interior(x) : 0.0; }

    /// Exact integral of the polynomial over [0,1].
    double integral() const noexcept {
        double acc = 0.0;
        for (std::size_t m = 0; m < coeffs_.size(); ++m)
            acc += coeffs_[m] / static_cast<double>(m + 1);
        return acc;
    }

    friend bool operator==(const PolynomialPotential&, const PolynomialPotential&) = default;

private:
    std::vector<double> coeffs_;
};

inline double eval(const PolynomialPotential& p, double x) {
    if (!(x >= 0.0))
        throw std::invalid_argument("eval: x must be non-negative");
    return p(x);
}

/// Depth of the constant reference well; the reference potential is -value on (0,1).
struct WellDepth {
    double value = 0.0;

    constexpr WellDepth() = default;
    explicit WellDepth(double v) : value(v) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("WellDepth: depth must be finite and non-negative");
    }

    friend auto operator<=>(const WellDepth&, const WellDepth&) = default;
};

/// v(x) = A x (x - 1).
inline PolynomialPotential parabolic_well(double A) {
    if (!(A > 0.0) || !std::isfinite(A))
        throw std::invalid_argument("parabolic_well: A must be positive");
    return PolynomialPotential({0.0, -A, A});
}

/// Depth of the constant well with the same integral over [0,1] as p.
inline WellDepth mean_depth(const PolynomialPotential& p) {
    const double v0 = -p.integral();
    if (v0 < 0.0)
        throw NotAWell("mean_depth: potential is repulsive on average (mean depth " +
                       detail::num(v0) + ")");
    return WellDepth(v0 == 0.0 ? 0.0 : v0);
}

/// Largest depth -v(x) over [0,1], sampled; zero when v >= 0 everywhere.
inline double max_depth(const PolynomialPotential& p, int samples = 1000) {
    double deepest = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double x = static_cast<double>(i) / samples;
        deepest = std::max(deepest, -p.interior(x));
    }
    return deepest;
}

} // namespace dlscatter
