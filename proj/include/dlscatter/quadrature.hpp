#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace dlscatter {

/// G equally spaced points on [0,1], G odd so composite Simpson applies.
class UniformGrid {
public:
    explicit UniformGrid(std::size_t points) : n_(points) {
        if (points < 5 || points % 2 == 0)
            throw std::invalid_argument("UniformGrid: need an odd number of points >= 5");
    }

    std::size_t size() const noexcept { return n_; }
    double step() const noexcept { return 1.0 / static_cast<double>(n_ - 1); }
    double operator[](std::size_t i) const noexcept {
        return i + 1 == n_ ? 1.0 : static_cast<double>(i) * step();
    }

    template <class F>
    std::vector<double> sample(F&& f) const {
        std::vector<double> out(n_);
        for (std::size_t i = 0; i < n_; ++i)
            out[i] = f((*this)[i]);
        return out;
    }

    friend bool operator==(const UniformGrid&, const UniformGrid&) = default;

private:
    std::size_t n_;
};

/// Composite Simpson over the whole sampled range.
inline double simpson(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("simpson: need an odd number of samples >= 3");
    double odd = 0.0, even = 0.0;
    for (std::size_t i = 1; i + 1 < n; i += 2)
        odd += f[i];
    for (std::size_t i = 2; i + 1 < n; i += 2)
        even += f[i];
    return h / 3.0 * (f[0] + f[n - 1] + 4.0 * odd + 2.0 * even);
}

/// Running integral F[i] = int_0^{x_i} f. Even nodes are composite Simpson;
/// each odd node adds a single-interval cubic rule to its even neighbour, so
/// every entry carries an O(h^4) global error.
inline std::vector<double> cumulative_simpson(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    if (n < 5 || n % 2 == 0)
        throw std::invalid_argument("cumulative_simpson: need an odd number of samples >= 5");
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 2; i < n; i += 2)
        out[i] = out[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
    for (std::size_t i = 1; i < n; i += 2) {
        // int_{x_{i-1}}^{x_i} from the cubic through four neighbouring samples
        if (i + 2 < n)
            out[i] = out[i - 1] + h / 24.0 * (9.0 * f[i - 1] + 19.0 * f[i] - 5.0 * f[i + 1] + f[i + 2]);
        else
            out[i] = out[i + 1] - h / 24.0 * (9.0 * f[i + 1] + 19.0 * f[i] - 5.0 * f[i - 1] + f[i - 2]);
    }
    return out;
}

/// Plain composite trapezoid with n intervals on [a, b].
template <class F>
double trapezoid(F&& f, double a, double b, std::size_t n) {
    const double h = (b - a) / static_cast<double>(n);
    double acc = 0.5 * (f(a) + f(b));
    for (std::size_t i = 1; i < n; ++i)
        acc += f(a + static_cast<double>(i) * h);
    return acc * h;
}

} // namespace dlscatter
