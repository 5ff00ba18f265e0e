#pragma once

// Truncated formal power series in the bookkeeping parameter lambda. A series
// is stored as its coefficient vector a[0..J].

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace dlscatter::series {

using Series = std::vector<double>;

inline Series multiply(std::span<const double> a, std::span<const double> b, std::size_t order) {
    Series out(order + 1, 0.0);
    for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
        if (a[i] == 0.0)
            continue;
        for (std::size_t j = 0; j < b.size() && i + j <= order; ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

/// sin(d) and cos(d) for a series d with d[0] == 0, truncated at `order`.
struct SinCos {
    Series sin;
    Series cos;
};

inline SinCos sin_cos(std::span<const double> d, std::size_t order) {
    if (!d.empty() && d[0] != 0.0)
        throw std::invalid_argument("sin_cos: series must have zero constant term");
    SinCos out{Series(order + 1, 0.0), Series(order + 1, 0.0)};
    // d^m has valuation >= m, so the Taylor sums stop at m = order.
    Series power(order + 1, 0.0);
    power[0] = 1.0;
    double factorial = 1.0;
    for (std::size_t m = 0; m <= order; ++m) {
        if (m > 0) {
            power = multiply(power, d, order);
            factorial *= static_cast<double>(m);
        }
        const double sign = ((m / 2) % 2 == 0) ? 1.0 : -1.0;
        auto& target = (m % 2 == 0) ? out.cos : out.sin;
        for (std::size_t i = 0; i <= order; ++i)
            target[i] += sign * power[i] / factorial;
    }
    return out;
}

} // namespace dlscatter::series

namespace dlscatter {

/// Given the coefficients I_1..I_J of sin(Delta delta), returns delta_1..delta_J
/// with sin(sum_j delta_j lambda^j) = sum_j I_j lambda^j through order J.
///
/// The lambda^n coefficient of sin(D) is delta_n plus a polynomial in
/// delta_1..delta_{n-1}, so the system is solved one order at a time.
inline std::vector<double> invert_sine_series(std::span<const double> I) {
    if (I.empty())
        throw std::invalid_argument("invert_sine_series: need at least one coefficient");
    const std::size_t J = I.size();
    series::Series d(J + 1, 0.0);
    for (std::size_t n = 1; n <= J; ++n) {
        const auto sc = series::sin_cos(std::span<const double>(d.data(), n), n);
        d[n] = I[n - 1] - sc.sin[n];
    }
    return {d.begin() + 1, d.end()};
}

/// Integration-constant corrections C_1..C_J from
/// C = sin(Delta delta) cot(k + delta0) + cos(Delta delta).
inline std::vector<double> C_series(std::span<const double> deltas, double k, double delta0) {
    const std::size_t J = deltas.size();
    series::Series d(J + 1, 0.0);
    std::copy(deltas.begin(), deltas.end(), d.begin() + 1);
    const auto sc = series::sin_cos(d, J);
    const double cot = std::cos(k + delta0) / std::sin(k + delta0);
    std::vector<double> C(J);
    for (std::size_t j = 1; j <= J; ++j)
        C[j - 1] = sc.sin[j] * cot + sc.cos[j];
    return C;
}

} // namespace dlscatter
