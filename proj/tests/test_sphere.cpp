#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <affine/sphere.hpp>

#include "support.hpp"

using namespace affine;

TEST(DirectionSet, FourPointRule) {
    const auto ds = make_direction_set(2, 4);
    const double expect[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (int i = 0; i < 4; ++i) {
        EXPECT_EQ(ds[i][0], expect[i][0]);
        EXPECT_EQ(ds[i][1], expect[i][1]);
        EXPECT_DOUBLE_EQ(ds.weights[i], std::numbers::pi / 2);
    }
}

TEST(DirectionSet, WeightsSumToSphereArea) {
    const auto c = make_direction_set(2, 360);
    std::vector<double> one(c.size(), 1.0);
    EXPECT_NEAR(integrate_sphere(c, one), 2.0 * std::numbers::pi, 1e-12);
    const auto s = make_direction_set(3, 1000);
    one.assign(s.size(), 1.0);
    EXPECT_NEAR(integrate_sphere(s, one), 4.0 * std::numbers::pi, 1e-12);
}

TEST(DirectionSet, SecondMomentOnSphere) {
    const auto s = make_direction_set(3, 1000);
    std::vector<double> v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) v[i] = s[i][2] * s[i][2];
    EXPECT_NEAR(integrate_sphere(s, v), 4.0 * std::numbers::pi / 3.0, 1e-3);
}

TEST(DirectionSet, HalfCosineIntegrals) {
    const auto ds = make_direction_set(2, 720);
    std::vector<double> a(ds.size()), b(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        a[i] = std::max(0.0, ds[i][0]);
        b[i] = a[i] * a[i];
    }
    EXPECT_NEAR(integrate_sphere(ds, a), 2.0, 1e-4);
    EXPECT_NEAR(integrate_sphere(ds, b), std::numbers::pi / 2, 1e-4);
}

TEST(DirectionSet, CoordinateFunctionsIntegrateToZero) {
    for (int m : {4, 7, 90, 361, 720}) {
        const auto ds = make_direction_set(2, m);
        for (int k = 0; k < 2; ++k) {
            std::vector<double> v(ds.size());
            for (std::size_t i = 0; i < ds.size(); ++i) v[i] = ds[i][k];
            EXPECT_NEAR(integrate_sphere(ds, v), 0.0, 1e-10) << m;
        }
    }
    for (int m : {100, 500, 2000}) {
        const auto ds = make_direction_set(3, m);
        for (int k = 0; k < 3; ++k) {
            std::vector<double> v(ds.size());
            for (std::size_t i = 0; i < ds.size(); ++i) v[i] = ds[i][k];
            EXPECT_NEAR(integrate_sphere(ds, v), 0.0, 0.5 / m) << m;
        }
    }
}

TEST(DirectionSet, UnitVectorsAndDeterminism) {
    for (int dim : {2, 3}) {
        const auto a = make_direction_set(dim, 200), b = make_direction_set(dim, 200);
        EXPECT_EQ(a, b);
        for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(norm(a[i]), 1.0, 1e-14);
    }
}

TEST(DirectionSet, RefinementLadderOnSmoothIntegrand) {
    // exp(u_1 + 0.5 u_2) over S^2; reference from a fine rule.
    auto integrand = [](std::span<const double> u) { return std::exp(u[0] + 0.5 * u[1]); };
    auto rule = [&](int m) {
        const auto ds = make_direction_set(3, m);
        std::vector<double> v(ds.size());
        for (std::size_t i = 0; i < ds.size(); ++i) v[i] = integrand(ds[i]);
        return integrate_sphere(ds, v);
    };
    // Exact: 4 pi sinh(r)/r with r = |(1, 0.5, 0)|.
    const double r = std::sqrt(1.25), exact = 4.0 * std::numbers::pi * std::sinh(r) / r;
    // Fibonacci points are equal-weight quasi-Monte Carlo: the error is not
    // monotone in m but stays under 1/m and falls by orders of magnitude.
    for (int m : {100, 250, 500, 1000, 2000, 4000, 8000}) EXPECT_LT(std::abs(rule(m) - exact), 1.0 / m) << m;
    EXPECT_LT(std::abs(rule(4000) - exact), 0.02 * std::abs(rule(250) - exact));
}

TEST(DirectionSet, RejectsBadRequests) {
    EXPECT_THROW(make_direction_set(2, 3), std::invalid_argument);
    EXPECT_THROW(make_direction_set(4, 100), std::invalid_argument);
    EXPECT_THROW(SpherePoints(2, {1.0, 1.0}), std::invalid_argument);
}

TEST(RandomDirectionSet, AnyDimension) {
    const auto ds = make_random_direction_set(5, 400, 3);
    double total = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        EXPECT_NEAR(norm(ds[i]), 1.0, 1e-12);
        total += ds.weights[i];
    }
    EXPECT_NEAR(total, sphere_area(5), 1e-10);
}

TEST(HemisphereGate, SquareMeasure) {
    DiscreteSphereMeasure sq(2, {1, 0, 0, 1, -1, 0, 0, -1}, {1, 1, 1, 1});
    const auto probes = make_direction_set(2, 360);
    // 1-D scan oracle: (cos t)_+ + (sin t)_+ + (-cos t)_+ + (-sin t)_+ = |cos t| + |sin t| >= 1.
    double scan = 1e9;
    for (int i = 0; i < 360; ++i) {
        const double t = 2.0 * std::numbers::pi * i / 360;
        scan = std::min(scan, std::abs(std::cos(t)) + std::abs(std::sin(t)));
    }
    EXPECT_NEAR(hemisphere_mass_min(sq, probes), scan, 1e-12);
    EXPECT_GE(hemisphere_mass_min(sq, probes), 1.0 - 1e-12);
    EXPECT_TRUE(passes_hemisphere_gate(sq));
}

TEST(HemisphereGate, ConcentratedMeasures) {
    const auto probes = make_direction_set(2, 360);
    DiscreteSphereMeasure one(2, {1, 0}, {1});
    EXPECT_NEAR(hemisphere_mass_min(one, probes), 0.0, 1e-15);
    EXPECT_FALSE(passes_hemisphere_gate(one));
    DiscreteSphereMeasure line(2, {1, 0, -1, 0}, {1, 1});
    EXPECT_NEAR(hemisphere_mass_min(line, probes), 0.0, 1e-15);
    EXPECT_FALSE(passes_hemisphere_gate(line));
}

TEST(SphereMeasure, RejectsBadWeights) {
    EXPECT_THROW(DiscreteSphereMeasure(2, {1, 0}, {0.0}), std::invalid_argument);
    EXPECT_THROW(DiscreteSphereMeasure(2, {1, 0}, {1.0, 2.0}), std::invalid_argument);
}
