#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dlscatter/dalgarno_lewis.hpp"
#include "dlscatter/reference_solver.hpp"

using namespace dlscatter;
constexpr double pi = std::numbers::pi;

namespace {

/// v0 + t (v + v0) written as a polynomial: the reference depth stays v0.
PolynomialPotential scaled_perturbation(const PolynomialPotential& p, double v0, double t) {
    std::vector<double> c(p.coeffs().begin(), p.coeffs().end());
    for (auto& w : c)
        w *= t;
    c[0] += t * v0 - v0;
    return PolynomialPotential(c);
}

/// -k int_0^1 v1 y0^2 with y0 rebuilt from the matching condition, 10^6-interval trapezoid.
double first_order_by_trapezoid(const PolynomialPotential& p, double k) {
    const double v0 = -p.integral();
    const double K = std::sqrt(k * k + v0);
    const double theta = k + phase_shift_oracle(PolynomialPotential({-v0}), k);
    const double amp = std::sin(theta) / (k * std::sin(K));
    return -k * trapezoid(
                    [&](double x) {
                        const double y0 = amp * std::sin(K * x);
                        return (p.interior(x) + v0) * y0 * y0;
                    },
                    0.0, 1.0, 1000000);
}

/// The quoted closed form for the parabolic well, with a = A.
double first_order_closed_form(double A, double k) {
    const double v0 = A / 6.0, a = A;
    const double K2 = k * k + v0, K = std::sqrt(K2);
    const double th = k + delta0_unwrapped(WellDepth(v0), k);
    const double s = std::sin(K), c = std::cos(K);
    return std::sin(th) * std::sin(th) / (12.0 * k * std::pow(K2, 1.5) * s * s) *
           (3.0 * (a - 2.0 * v0 * K2) * s * c + K * (3.0 * a * s * s - a * (K2 + 3.0) + 6.0 * v0 * K2));
}

/// Even/odd central differences of the exact phase shift in the coupling t,
/// with one Richardson step: an oracle for delta_1 and delta_2 that never
/// touches the perturbation engine.
std::pair<double, double> first_two_orders_by_differences(const PolynomialPotential& p, double k) {
    const double v0 = -p.integral();
    const double d0 = phase_shift_oracle(PolynomialPotential({-v0}), k);
    auto diffs = [&](double t) {
        const double plus = phase_shift_oracle(scaled_perturbation(p, v0, t), k);
        const double minus = phase_shift_oracle(scaled_perturbation(p, v0, -t), k);
        return std::pair{(plus - minus) / (2 * t), (plus + minus - 2 * d0) / (2 * t * t)};
    };
    const auto [o1, e1] = diffs(0.02);
    const auto [o2, e2] = diffs(0.01);
    return {(4 * o2 - o1) / 3, (4 * e2 - e1) / 3};
}

} // namespace

TEST(DalgarnoLewis, ZeroPerturbationFixpoint) {
    const auto r = perturb(PolynomialPotential({-2.5}), 1.7, 5);
    ASSERT_EQ(r.deltas.size(), 6u);
    EXPECT_EQ(r.deltas[0], delta0_unwrapped(WellDepth(2.5), 1.7));
    for (int j = 1; j <= 5; ++j) {
        EXPECT_LT(std::abs(r.deltas[j]), 1e-12);
        EXPECT_EQ(r.partial_sums[j], r.deltas[0]);
        EXPECT_EQ(r.Cs[j - 1], 0.0);
        for (double y : r.corrections[j].ys)
            EXPECT_LT(std::abs(y), 1e-12);
    }
}

TEST(DalgarnoLewis, OrderZeroGridIsReferenceSolution) {
    const auto r = perturb(parabolic_well(6), 1.0, 2);
    const auto b = make_basis(WellDepth(1.0), 1.0);
    const auto& g = r.corrections[0];
    for (std::size_t i = 0; i < g.ys.size(); ++i)
        EXPECT_NEAR(g.ys[i], b.y0(g.grid[i]), 1e-12);
    for (const auto& c : r.corrections)
        EXPECT_EQ(c.ys[0], 0.0);
}

TEST(DalgarnoLewis, StoredSeriesRelations) {
    const auto r = perturb(parabolic_well(12), 1.3, 3);
    EXPECT_EQ(r.deltas[1], r.I[0]);
    EXPECT_EQ(r.deltas[2], r.I[1]);
    EXPECT_NEAR(r.deltas[3], r.I[2] + std::pow(r.deltas[1], 3) / 6.0, 1e-15);
    const double cot = 1.0 / std::tan(1.3 + r.deltas[0]);
    EXPECT_NEAR(r.Cs[0], r.deltas[1] * cot, 1e-14);
    EXPECT_NEAR(r.Cs[1], r.deltas[2] * cot - r.deltas[1] * r.deltas[1] / 2, 1e-14);
}

TEST(DalgarnoLewis, FirstOrderMatchesTrapezoid) {
    for (double A : {6.0, 18.0})
        for (double k : {0.5, 1.0, 2.0, 5.0}) {
            const double engine = perturb(parabolic_well(A), k, 1).deltas[1];
            const double oracle = first_order_by_trapezoid(parabolic_well(A), k);
            EXPECT_NEAR(engine, oracle, 1e-8 * std::abs(oracle)) << "A = " << A << " k = " << k;
        }
}

TEST(DalgarnoLewis, QuotedClosedFormHasOppositeSign) {
    // The quoted first-order formula agrees in magnitude with the quadrature
    // and differs in sign everywhere.
    for (double A : {6.0, 18.0})
        for (double k : {0.5, 1.0, 2.0, 5.0}) {
            const double engine = perturb(parabolic_well(A), k, 1).deltas[1];
            const double quoted = first_order_closed_form(A, k);
            EXPECT_NEAR(engine, -quoted, 1e-6 * std::abs(quoted)) << "A = " << A << " k = " << k;
        }
}

TEST(DalgarnoLewis, FirstTwoOrdersMatchExactDifferences) {
    for (double A : {6.0, 18.0})
        for (double k : {0.5, 1.0, 3.0}) {
            const auto r = perturb(parabolic_well(A), k, 2);
            const auto [d1, d2] = first_two_orders_by_differences(parabolic_well(A), k);
            EXPECT_NEAR(r.deltas[1], d1, 1e-7 * std::max(1.0, std::abs(d1)));
            EXPECT_NEAR(r.deltas[2], d2, 1e-5 * std::max(1e-2, std::abs(d2)))
                << "A = " << A << " k = " << k;
        }
}

TEST(DalgarnoLewis, CouplingScaling) {
    const auto p = parabolic_well(12);
    const double v0 = mean_depth(p).value;
    const auto base = perturb(p, 1.0, 4);
    for (double t : {0.5, 0.25}) {
        const auto r = perturb(scaled_perturbation(p, v0, t), 1.0, 4);
        ASSERT_DOUBLE_EQ(r.reference_depth.value, v0);
        for (int j = 1; j <= 4; ++j)
            EXPECT_NEAR(r.deltas[j], std::pow(t, j) * base.deltas[j],
                        1e-8 * std::abs(std::pow(t, j) * base.deltas[j]));
    }
}

TEST(DalgarnoLewis, ExplicitCorrectionAgreesWithStableRoute) {
    const auto p = parabolic_well(18);
    const double k = 0.8;
    const auto r = perturb(p, k, 3);
    const auto basis = make_basis(mean_depth(p), k);
    const UniformGrid grid(2001);
    const auto v1 = sample_perturbation(p, mean_depth(p), grid);
    for (int j = 1; j <= 3; ++j) {
        const auto y = next_correction(basis, v1, r.corrections[j - 1], r.Cs[j - 1]);
        EXPECT_EQ(y.order, j);
        for (std::size_t i = 0; i < y.ys.size(); ++i)
            EXPECT_NEAR(y.ys[i], r.corrections[j].ys[i], 1e-10);
    }
}

TEST(DalgarnoLewis, HomogeneousCaseIsMultipleOfReference) {
    const auto basis = make_basis(WellDepth(2.0), 1.1);
    const UniformGrid grid(401);
    const std::vector<double> v1(grid.size(), 0.0);
    const auto y0 = sample_y0(basis, grid);
    const auto y = next_correction(basis, v1, y0, 0.37);
    for (std::size_t i = 0; i < y.ys.size(); ++i)
        EXPECT_NEAR(y.ys[i], 0.37 * y0.ys[i], 1e-15);
    EXPECT_EQ(sine_coefficient(basis, v1, y0), 0.0);
}

TEST(DalgarnoLewis, CorrectionsMatchExteriorSolution) {
    // Outside the well y = sin(kx + delta0 + Delta delta) / k. At x = 1 its
    // lambda^j coefficient fixes both y_j(1) and W(y_j, y0)(1) = -I_j / k.
    const auto p = parabolic_well(6);
    const double k = 1.4;
    const auto r = perturb(p, k, 3);
    const auto basis = make_basis(mean_depth(p), k);
    const double th = basis.theta();
    series::Series d(4, 0.0);
    std::copy(r.deltas.begin() + 1, r.deltas.end(), d.begin() + 1);
    const auto sc = series::sin_cos(d, 3);
    const double h = UniformGrid(2001).step();
    for (int j = 1; j <= 3; ++j) {
        const auto& y = r.corrections[j].ys;
        const std::size_t n = y.size() - 1;
        EXPECT_NEAR(y[n], (std::sin(th) * sc.cos[j] + std::cos(th) * sc.sin[j]) / k, 1e-11);
        // fourth-order one-sided derivative at x = 1
        const double yp = (25 * y[n] - 48 * y[n - 1] + 36 * y[n - 2] - 16 * y[n - 3] + 3 * y[n - 4]) /
                          (12 * h);
        const double wronskian = yp * basis.y0(1.0) - y[n] * basis.y0_prime(1.0);
        EXPECT_NEAR(wronskian, -r.I[j - 1] / k, 1e-8);
    }
}

TEST(DalgarnoLewis, PoleFreeWithInteriorNode) {
    PerturbOptions opt;
    opt.reference_depth = 12.0;
    const auto r = perturb(parabolic_well(18), 1.0, 3, opt);
    const auto b = make_basis(WellDepth(12.0), 1.0);
    ASSERT_GT(b.K(), pi);
    for (const auto& c : r.corrections)
        for (double y : c.ys)
            EXPECT_TRUE(std::isfinite(y));
    for (double d : r.deltas)
        EXPECT_TRUE(std::isfinite(d));
}

TEST(DalgarnoLewis, RejectsBadArguments) {
    EXPECT_THROW(perturb(parabolic_well(6), 1.0, 11), std::invalid_argument);
    EXPECT_THROW(perturb(parabolic_well(6), 0.0, 1), std::invalid_argument);
    EXPECT_THROW(perturb(parabolic_well(6), 1.0, 1, {.grid_size = 101}), std::invalid_argument);
    EXPECT_THROW(perturb(parabolic_well(6), 1.0, 1, {.grid_size = 2000}), std::invalid_argument);
    EXPECT_THROW(perturb(PolynomialPotential({1.0}), 1.0, 1), NotAWell);

    const auto basis = make_basis(WellDepth(1.0), 1.0);
    const auto y0 = sample_y0(basis, UniformGrid(401));
    const std::vector<double> v1(201, 1.0);
    EXPECT_THROW(sine_coefficient(basis, v1, y0), GridMismatch);
    EXPECT_THROW(next_correction(basis, v1, y0, 0.0), GridMismatch);
}

TEST(DalgarnoLewis, CoarseGridFailsResidualCheck) {
    EXPECT_THROW(perturb(parabolic_well(6), 10.0, 2, {.grid_size = 201}), ResidualCheckFailure);
    EXPECT_NO_THROW(perturb(parabolic_well(6), 10.0, 2, {.grid_size = 2001}));
}

TEST(DalgarnoLewis, AverageErrorFallsWithOrder) {
    for (double A : {6.0, 12.0, 18.0, 24.0}) {
        double prev = INFINITY;
        const auto p = parabolic_well(A);
        for (int j = 0; j <= 3; ++j) {
            double avg = 0.0;
            for (int i = 0; i < 50; ++i) {
                const double k = 0.1 + 4.9 * i / 49.0;
                const double ps = phase_shift_oracle(p, k);
                avg += std::abs((ps - perturb(p, k, j).partial_sums.back()) / ps) / 50.0;
            }
            EXPECT_LT(avg, prev) << "A = " << A << " order " << j;
            prev = avg;
        }
    }
}
