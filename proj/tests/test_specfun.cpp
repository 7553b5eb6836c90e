#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <affine/specfun.hpp>

#include "support.hpp"

using namespace affine;

namespace {

// Bessel's integral J_k(x) = (1/pi) int_0^pi cos(k t - x sin t) dt. The
// integrand is smooth and periodic, so the trapezoid rule converges
// geometrically; independent of the series/asymptotic code under test.
double bessel_integral(int k, double x) {
    const int m = 4000;
    double s = 0.0;
    for (int i = 0; i <= m; ++i) {
        const double t = std::numbers::pi * i / m;
        const double w = (i == 0 || i == m) ? 0.5 : 1.0;
        s += w * std::cos(k * t - x * std::sin(t));
    }
    return s / m;
}

template <class F>
double bisect_root(F f, double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        ((f(mid) < 0) == (f(lo) < 0) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST(Gamma, KnownValues) {
    EXPECT_NEAR(gamma_fn(0.5), std::sqrt(std::numbers::pi), 1e-13);
    EXPECT_NEAR(gamma_fn(5.0), 24.0, 1e-12);
    EXPECT_NEAR(gamma_fn(2.5), 1.3293403881791355, 1e-13);
}

TEST(Gamma, MatchesLibraryGamma) {
    testing_support::Gen g(11);
    for (int i = 0; i < 200; ++i) {
        const double x = g.uniform(0.05, 60.0);
        EXPECT_LT(testing_support::rel(gamma_fn(x), std::tgamma(x)), 1e-13) << x;
    }
}

TEST(Gamma, RecurrenceProperty) {
    testing_support::Gen g(12);
    for (int i = 0; i < 100; ++i) {
        const double x = g.uniform(0.5, 50.0);
        EXPECT_LT(testing_support::rel(gamma_fn(x + 1.0), x * gamma_fn(x)), 1e-11) << x;
    }
}

TEST(Gamma, RejectsNonPositive) {
    EXPECT_THROW(gamma_fn(0.0), std::domain_error);
    EXPECT_THROW(gamma_fn(-1.5), std::domain_error);
}

TEST(UnitBall, SmallDimensions) {
    EXPECT_DOUBLE_EQ(unit_ball_volume(0), 1.0);
    EXPECT_NEAR(unit_ball_volume(1), 2.0, 1e-14);
    EXPECT_NEAR(unit_ball_volume(2), std::numbers::pi, 1e-14);
    EXPECT_NEAR(unit_ball_volume(3), 4.0 * std::numbers::pi / 3.0, 1e-13);
}

TEST(UnitBall, IntegerBranchMatchesGammaForm) {
    EXPECT_EQ(unit_ball_volume(2), std::numbers::pi);
    for (int n = 0; n <= 30; ++n) {
        const double g = std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(1.0 + 0.5 * n);
        EXPECT_LT(testing_support::rel(unit_ball_volume(n), g), 1e-14) << n;
        // Continuous across the switch to the real-index formula.
        EXPECT_LT(testing_support::rel(unit_ball_volume(n + 1e-9), unit_ball_volume(n)), 1e-8) << n;
    }
}

TEST(UnitBall, DimensionRecursion) {
    for (int n = 1; n <= 20; ++n) {
        const double expect = unit_ball_volume(n - 1) * std::sqrt(std::numbers::pi) * std::tgamma((n + 1) / 2.0) / std::tgamma(n / 2.0 + 1.0);
        EXPECT_LT(testing_support::rel(unit_ball_volume(n), expect), 1e-11) << n;
    }
}

TEST(Bessel, EndpointsAndRoot) {
    EXPECT_DOUBLE_EQ(bessel_j(0, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(bessel_j(1, 0.0), 0.0);
    EXPECT_NEAR(bessel_j(1, 3.8317059702075123), 0.0, 1e-8);
}

TEST(Bessel, AgreesWithIntegralRepresentation) {
    for (double x : {0.1, 1.0, 2.5, 3.83, 7.0, 12.0, 16.9, 17.1, 25.0, 40.0, 50.0})
        for (int k : {0, 1}) EXPECT_NEAR(bessel_j(k, x), bessel_integral(k, x), 1e-10) << k << " " << x;
}

TEST(Bessel, RejectsOutOfRange) {
    EXPECT_THROW(bessel_j(2, 1.0), std::domain_error);
    EXPECT_THROW(bessel_j(0, -1.0), std::domain_error);
    EXPECT_THROW(bessel_j(0, 51.0), std::domain_error);
}

TEST(NeumannEigenvalue, PlaneFromIndependentRoot) {
    const double root = bisect_root([](double x) { return bessel_integral(1, x); }, 3.0, 4.5);
    EXPECT_NEAR(neumann_radial_eigenvalue(2), root * root, 1e-9);
    EXPECT_NEAR(neumann_radial_eigenvalue(2), 14.6819706, 1e-6);
}

TEST(NeumannEigenvalue, SpaceFromTanEquation) {
    // Newton on tan x = x near 4.49.
    double x = 4.49;
    for (int i = 0; i < 50; ++i) x -= (std::tan(x) - x) / (1.0 / (std::cos(x) * std::cos(x)) - 1.0);
    EXPECT_NEAR(neumann_radial_eigenvalue(3), x * x, 1e-9);
    EXPECT_NEAR(neumann_radial_eigenvalue(3), 20.1907286, 1e-6);
    EXPECT_THROW(neumann_radial_eigenvalue(4), std::domain_error);
}

TEST(SharpConstants, PlanarValues) {
    const double sp = std::sqrt(std::numbers::pi);
    EXPECT_NEAR(sharp_constant(ConstantKind::kappa, 2), std::numbers::pi, 1e-12);
    EXPECT_NEAR(sharp_constant(ConstantKind::kappa, 3), 4.0 * std::numbers::pi / 3.0, 1e-12);
    EXPECT_NEAR(sharp_constant(ConstantKind::c_np, 2, 2.0), 2.0 * sp, 1e-10);
    EXPECT_NEAR(sharp_constant(ConstantKind::a_sobolev, 2, 1.0), 1.0 / (2.0 * sp), 1e-10);
    EXPECT_NEAR(sharp_constant(ConstantKind::b_logsob, 2, 1.0), 1.0 / (2.0 * sp), 1e-10);
}

TEST(SharpConstants, EnergyConstantByHand) {
    // c_{n,p} = (n k_n)^{1/n} (n k_n k_{p-1} / (2 k_{n+p-2}))^{1/p}, with
    // n = 3, p = 2: k_3 = 4pi/3, k_1 = 2, k_3 again.
    const double k3 = 4.0 * std::numbers::pi / 3.0;
    const double expect = std::cbrt(3.0 * k3) * std::sqrt(3.0 * k3 * 2.0 / (2.0 * k3));
    EXPECT_NEAR(sharp_constant(ConstantKind::c_np, 3, 2.0), expect, 1e-12);
}

TEST(SharpConstants, LogSobolevContinuousAtOne) {
    for (int n : {2, 3}) {
        const double b1 = sharp_constant(ConstantKind::b_logsob, n, 1.0);
        EXPECT_NEAR(b1, 1.0 / (n * std::pow(unit_ball_volume(n), 1.0 / n)), 1e-12);
        EXPECT_LE(std::abs(sharp_constant(ConstantKind::b_logsob, n, 1.0 + 1e-6) - b1), 1e-4);
    }
}

TEST(SharpConstants, GagliardoNirenbergEndpointIsSobolev) {
    for (auto [n, p] : {std::pair{2, 1.5}, std::pair{3, 2.0}, std::pair{3, 1.5}}) {
        const double qs = gn_q_max(n, p);
        EXPECT_NEAR(sharp_constant(ConstantKind::theta_gn, n, p, qs), 1.0, 1e-12);
        EXPECT_LT(testing_support::rel(sharp_constant(ConstantKind::gamma_gn, n, p, qs), sharp_constant(ConstantKind::a_sobolev, n, p)),
                  1e-10);
    }
}

TEST(SharpConstants, GagliardoNirenbergGapIsLinearInOffset) {
    // gamma has a nonzero q-derivative at the endpoint, so the gap over the
    // offset is (nearly) constant along a ladder.
    const int n = 2;
    const double p = 1.5, qs = gn_q_max(n, p), a = sharp_constant(ConstantKind::a_sobolev, n, p);
    std::vector<double> slope;
    for (double d : {1e-3, 1e-4, 1e-5}) slope.push_back(std::abs(sharp_constant(ConstantKind::gamma_gn, n, p, qs - d) / a - 1.0) / d);
    EXPECT_LT(testing_support::rel(slope[1], slope[2]), 0.01);
    EXPECT_LT(testing_support::rel(slope[0], slope[1]), 0.05);
}

TEST(SharpConstants, DomainErrors) {
    EXPECT_THROW(sharp_constant(ConstantKind::a_sobolev, 2, 2.0), std::domain_error);
    EXPECT_THROW(sharp_constant(ConstantKind::alpha_morrey, 2, 1.5), std::domain_error);
    EXPECT_THROW(sharp_constant(ConstantKind::gamma_gn, 2, 1.5, 3.5), std::domain_error);
    EXPECT_THROW(sharp_constant(ConstantKind::gamma_gn, 2, 1.5, 1.2), std::domain_error);
    EXPECT_THROW(sharp_constant(ConstantKind::c_np, 2), std::domain_error);
    EXPECT_THROW(sharp_constant(ConstantKind::kappa, 1), std::domain_error);
    EXPECT_THROW(parse_constant_kind("zeta"), std::invalid_argument);
}

TEST(SharpConstants, NashFromEigenvalue) {
    // n = 2: beta_2^2 = 2 (1 + n/2)^2 / (n lambda_2 kappa_2) = 4 / (pi lambda_2).
    const double lam = neumann_radial_eigenvalue(2);
    EXPECT_NEAR(sharp_constant(ConstantKind::beta_nash, 2, 2.0), std::sqrt(4.0 / (std::numbers::pi * lam)), 1e-12);
}
