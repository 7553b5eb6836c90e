#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <affine/grid.hpp>
#include <affine/sampling.hpp>
#include <affine/verify.hpp>

#include "support.hpp"

using namespace affine;
using testing_support::rel;

namespace {

const GridParams g4 = GridParams::cube(2, 256, 4.0);

GridFunction gaussian(const GridParams& g = g4) { return testing_support::sample(testing_support::gaussian_spec(), g); }

}  // namespace

TEST(GridParams, CubeLayout) {
    EXPECT_EQ(g4.cell_count(), 256u * 256u);
    EXPECT_DOUBLE_EQ(g4.spacing, 1.0 / 32.0);
    EXPECT_DOUBLE_EQ(g4.center()[0], 0.0);
    EXPECT_DOUBLE_EQ(g4.center()[1], 0.0);
    const auto idx = g4.unravel(3 * 256 + 7);
    EXPECT_EQ(idx[0], 3);
    EXPECT_EQ(idx[1], 7);
    EXPECT_THROW(GridParams::cube(2, 4, 1.0).validate(), std::invalid_argument);
    EXPECT_THROW(GridParams::cube(4, 16, 1.0).validate(), std::invalid_argument);
}

TEST(GridFunction, RejectsNonzeroShellAndNonFinite) {
    const auto g = GridParams::cube(2, 16, 1.0);
    std::vector<double> v(g.cell_count(), 0.0);
    v[0] = 1.0;
    EXPECT_THROW(GridFunction(g, v), std::invalid_argument);
    v[0] = 0.0;
    v[8 * 16 + 8] = std::nan("");
    EXPECT_THROW(GridFunction(g, v), std::invalid_argument);
}

TEST(Sampling, GaussianCentreValue) {
    const auto f = gaussian();
    std::size_t centre = 128 * 256 + 128;
    EXPECT_DOUBLE_EQ(f[centre], 1.0);
    EXPECT_DOUBLE_EQ(f.max_abs(), 1.0);
}

TEST(Sampling, SobolevExtremalPointValues) {
    AnalyticSpec s;
    s.family = "sobolev_extremal";
    s.params = {{"a", 1.0}, {"p", 1.5}};
    const auto f = sample_function(s, g4);
    for (std::size_t i : {std::size_t(128 * 256 + 128), std::size_t(100 * 256 + 150), std::size_t(40 * 256 + 200)}) {
        const auto x = g4.point(i);
        const double r = std::hypot(x[0], x[1]);
        EXPECT_NEAR(f[i], std::pow(1.0 + r * r * r, -1.0 / 3.0), 1e-14);
    }
}

TEST(Sampling, LogSobolevExtremalPrefactor) {
    // n = p = 2, a = 1: pi Gamma(2) / (1 Gamma(2)) exp(-|x|^2).
    AnalyticSpec s;
    s.family = "logsob_extremal";
    s.params = {{"a", 1.0}, {"p", 2.0}};
    const auto f = sample_function(s, g4);
    const std::size_t i = 120 * 256 + 131;
    const auto x = g4.point(i);
    EXPECT_NEAR(f[i], std::numbers::pi * std::exp(-(x[0] * x[0] + x[1] * x[1])), 1e-13);
}

TEST(Sampling, ShearedSpecComposes) {
    const std::vector<double> m{1.0, 1.5, 0.0, 1.0};
    const auto f = sample_function(shear_spec(testing_support::gaussian_spec(), m), g4);
    const std::size_t i = 140 * 256 + 120;
    const auto x = g4.point(i);
    const double y0 = x[0] + 1.5 * x[1], y1 = x[1];
    EXPECT_NEAR(f[i], std::exp(-(y0 * y0 + y1 * y1)), 1e-14);
}

TEST(Sampling, CutoffMakesCompactSupport) {
    AnalyticSpec s;
    s.family = "sobolev_extremal";
    s.params = {{"a", 1.0}, {"p", 1.5}, {"cutoff", 2.0}};
    const auto f = sample_function(s, g4);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto x = g4.point(i);
        if (std::hypot(x[0], x[1]) >= 2.0) {
            EXPECT_EQ(f[i], 0.0);
        }
    }
}

TEST(Sampling, UnknownFamilyAndBadParams) {
    AnalyticSpec s;
    s.family = "lorentzian";
    EXPECT_THROW(sample_function(s, g4), std::invalid_argument);
    s.family = "gaussian";
    s.params = {{"q", 2.0}};
    EXPECT_THROW(sample_function(s, g4), std::invalid_argument);
    AnalyticSpec sob;
    sob.family = "sobolev_extremal";
    sob.params = {{"p", 2.5}};
    EXPECT_THROW(sample_function(sob, g4), std::exception);
}

TEST(Sampling, StrictModeRejectsTruncatedMass) {
    // Slowly decaying tail, small box: most of the L^1 mass is outside.
    AnalyticSpec s;
    s.family = "sobolev_extremal";
    s.params = {{"a", 1.0}, {"p", 1.5}};
    const auto small = GridParams::cube(2, 64, 2.0);
    SampleDiagnostics d;
    EXPECT_NO_THROW(sample_function(s, small, {}, &d));
    EXPECT_TRUE(d.truncated);
    SampleOptions strict;
    strict.strict = true;
    EXPECT_THROW(sample_function(s, small, strict), std::domain_error);
    EXPECT_NO_THROW(sample_function(testing_support::gaussian_spec(), g4, strict));
}

TEST(Gradient, ZeroFunctionGivesZeroField) {
    const GridFunction z(g4, std::vector<double>(g4.cell_count(), 0.0));
    const auto field = gradient_field(z);
    for (double x : field.data) EXPECT_EQ(x, 0.0);
}

TEST(Gradient, GaussianAgainstAnalyticDerivative) {
    const auto f = gaussian();
    const auto g2 = gradient_field(f, Stencil::central2), g4f = gradient_field(f, Stencil::central4);
    double e2 = 0.0, e4 = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto x = g4.point(i);
        if (std::hypot(x[0], x[1]) > 3.0) continue;
        const double d0 = -2.0 * x[0] * std::exp(-(x[0] * x[0] + x[1] * x[1]));
        e2 = std::max(e2, std::abs(g2[i][0] - d0));
        e4 = std::max(e4, std::abs(g4f[i][0] - d0));
    }
    const double h = g4.spacing;
    EXPECT_LT(e2, 2.0 * h * h);
    EXPECT_LT(e4, 2.0 * h * h * h * h);
}

TEST(Gradient, LinearTimesBumpInFlatRegion) {
    // x_1 * b(x) with b = 1 on |x| < 1: derivative is exactly b there (cubic
    // stencils are exact on linear functions).
    const auto f = testing_support::from_callable(g4, [](const std::array<double, 3>& x) {
        const double r = std::hypot(x[0], x[1]);
        const double b = r < 1.0 ? 1.0 : r < 3.0 ? std::pow(1.0 - std::pow((r - 1.0) / 2.0, 2), 4) : 0.0;
        return x[0] * b;
    });
    const auto field = gradient_field(f);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto x = g4.point(i);
        if (std::hypot(x[0], x[1]) < 0.8) {
            EXPECT_NEAR(field[i][0], 1.0, 1e-12);
            EXPECT_NEAR(field[i][1], 0.0, 1e-12);
        }
    }
}

TEST(Norms, GaussianValues) {
    const auto f = gaussian();
    EXPECT_LT(rel(lp_norm(f, 2.0), std::sqrt(std::numbers::pi / 2)), 0.01);
    EXPECT_DOUBLE_EQ(lp_norm(f, kInfinity), 1.0);
    EXPECT_THROW(lp_norm(f, 0.5), std::domain_error);
}

TEST(Norms, Homogeneity) {
    const auto f = gaussian();
    for (double lam : {0.3, 2.0, 7.5})
        for (double p : {1.0, 1.5, 2.0, 4.0, kInfinity}) EXPECT_LT(rel(lp_norm(f.scaled(lam), p), lam * lp_norm(f, p)), 1e-13);
}

TEST(SupportVolume, PlateauAndBall) {
    std::vector<double> v(g4.cell_count(), 0.0);
    for (int a = 100; a < 110; ++a)
        for (int b = 100; b < 110; ++b) v[a * 256 + b] = 1.0;
    v[50 * 256 + 50] = 0.3;  // below eps_rel = 0.5
    const GridFunction plateau(g4, v);
    EXPECT_DOUBLE_EQ(support_volume(plateau, 0.5), 100 * g4.cell_volume());

    AnalyticSpec s;
    s.family = "morrey_extremal";
    s.params = {{"a", 1.0}, {"p", 3.0}};
    const auto f = sample_function(s, g4);
    EXPECT_LT(rel(support_volume(f), std::numbers::pi), 0.02);
    EXPECT_THROW(support_volume(GridFunction(g4, std::vector<double>(g4.cell_count(), 0.0))), std::domain_error);
}

TEST(Distribution, GaussianLevelSets) {
    const auto f = gaussian();
    std::vector<double> t;
    for (int k = 1; k <= 9; ++k) t.push_back(0.1 * k);
    const auto d = distribution_function(f, t);
    for (std::size_t k = 0; k < t.size(); ++k) EXPECT_LT(rel(d.masses[k], std::numbers::pi * std::log(1.0 / t[k])), 0.02) << t[k];
    const double top[] = {1.0, 2.0};
    for (double m : distribution_function(f, top).masses) EXPECT_EQ(m, 0.0);
    const double bad[] = {0.5, 0.2};
    EXPECT_THROW(distribution_function(f, bad), std::domain_error);
}

TEST(Distribution, DecreasingRearrangementInvertsMu) {
    const auto f = gaussian();
    std::vector<double> s;
    for (int k = 1; k <= 20; ++k) s.push_back(0.3 * k);
    const auto d = decreasing_rearrangement(f, s);
    // mu(t) = pi ln(1/t)  =>  f^*(s) = exp(-s / pi).
    for (std::size_t k = 0; k < s.size(); ++k) EXPECT_LT(rel(d.values[k], std::exp(-s[k] / std::numbers::pi)), 0.02) << s[k];
    EXPECT_EQ(decreasing_rearrangement(f, std::vector<double>{1e6}).values[0], 0.0);
}

TEST(UniformSumCdf, OneAndTwoTerms) {
    const double w1[] = {0.5};
    for (double x : {-0.1, 0.0, 0.2, 0.5, 0.7}) EXPECT_NEAR(detail::uniform_sum_cdf(w1, x), std::clamp(x / 0.5, 0.0, 1.0), 1e-15);
    // a U + b V, a <= b: trapezoid density.
    const double a = 0.3, b = 0.8;
    const double w2[] = {a, b};
    auto cdf = [&](double x) {
        if (x <= 0) return 0.0;
        if (x <= a) return x * x / (2 * a * b);
        if (x <= b) return (x - a / 2) / b;
        if (x <= a + b) return 1.0 - (a + b - x) * (a + b - x) / (2 * a * b);
        return 1.0;
    };
    for (double x = -0.1; x < 1.2; x += 0.05) EXPECT_NEAR(detail::uniform_sum_cdf(w2, x), cdf(x), 1e-13) << x;
}

TEST(UniformSumCdf, ThreeTermsAgainstSampling) {
    testing_support::Gen g(5);
    const double w[] = {0.2, 0.5, 0.9};
    std::vector<double> draws(400000);
    for (double& d : draws) d = w[0] * g.uniform(0, 1) + w[1] * g.uniform(0, 1) + w[2] * g.uniform(0, 1);
    for (double x : {0.2, 0.5, 0.8, 1.1, 1.4}) {
        const double emp = std::count_if(draws.begin(), draws.end(), [x](double d) { return d <= x; }) / double(draws.size());
        EXPECT_NEAR(detail::uniform_sum_cdf(w, x), emp, 3e-3) << x;
        // Symmetry about the mean.
        EXPECT_NEAR(detail::uniform_sum_cdf(w, x) + detail::uniform_sum_cdf(w, 1.6 - x), 1.0, 1e-12);
    }
}

TEST(Rearrangement, RadialInputIsReproduced) {
    const auto f = gaussian();
    const auto s = symmetric_rearrangement(f);
    // One cell of interpolation error: h * max |grad f| = h * sqrt(2/e).
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, std::abs(s[i] - f[i]));
    EXPECT_LT(worst, g4.spacing * std::sqrt(2.0 / std::numbers::e));
    // The tail sits inside the lowest threshold band and meets the square
    // zero shell, so monotonicity holds to one band, not exactly.
    EXPECT_TRUE(is_radial_decreasing(s, 1.0 / kRearrangementLevels));
}

TEST(Rearrangement, TranslatedGaussianIsCentred) {
    auto spec = testing_support::gaussian_spec();
    spec.center = {0.9, -0.6};
    const auto f = sample_function(spec, g4);
    const auto s = symmetric_rearrangement(f);
    EXPECT_DOUBLE_EQ(s[128 * 256 + 128], f.max_abs());
    for (double p : {1.0, 2.0, 4.0}) EXPECT_LT(rel(lp_norm(s, p), lp_norm(f, p)), 0.01);
    double worst = 0.0;
    const auto c = gaussian();
    for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, std::abs(s[i] - c[i]));
    EXPECT_LT(worst, 0.02);
}

TEST(Rearrangement, CorpusEquimeasurability) {
    // Norms within 1%; the sup norm exactly. Staircase distributions agree up
    // to the lattice-point discrepancy of the level balls (see the notes on
    // sub-cell level placement): 2 cells plus 5 sqrt(count) cells.
    for (const auto& e : default_corpus(0)) {
        const auto f = sample_function(e.spec, e.grid);
        const auto s = symmetric_rearrangement(f);
        EXPECT_EQ(s.max_abs(), f.max_abs()) << e.id;
        for (double p : {1.0, 2.0, 4.0}) EXPECT_LT(rel(lp_norm(s, p), lp_norm(f, p)), 0.01) << e.id << " p=" << p;
        std::vector<double> t;
        for (int k = 1; k < 100; ++k) t.push_back(f.max_abs() * k / 100.0);
        const auto a = distribution_function(f, t), b = distribution_function(s, t);
        const double cell = e.grid.cell_volume();
        for (std::size_t k = 0; k < t.size(); ++k)
            EXPECT_LE(std::abs(a.masses[k] - b.masses[k]), cell * (2.0 + 5.0 * std::sqrt(a.masses[k] / cell))) << e.id << " t=" << t[k];
    }
}

TEST(Rearrangement, OrderPreservingOnRandomPairs) {
    // g = f + nonnegative bump, so f <= g pointwise; f-star <= g-star up to the
    // threshold quantisation of the distribution inverse.
    testing_support::Gen gen(21);
    for (int trial = 0; trial < 6; ++trial) {
        AnalyticSpec f_spec, g_spec;
        f_spec.family = g_spec.family = "bump_sum";
        Bump b1{{gen.uniform(-1, 1), gen.uniform(-1, 1)}, gen.uniform(0.5, 1.0), gen.uniform(0.6, 1.0), trial % 2 ? "poly" : "gaussian"};
        Bump b2{{gen.uniform(-1, 1), gen.uniform(-1, 1)}, gen.uniform(0.1, 0.6), gen.uniform(0.4, 1.0), "gaussian"};
        f_spec.bumps = {b1};
        g_spec.bumps = {b1, b2};
        const auto f = sample_function(f_spec, g4), g = sample_function(g_spec, g4);
        const auto fs = symmetric_rearrangement(f), gs = symmetric_rearrangement(g);
        const double slack = 2.0 * g.max_abs() / kRearrangementLevels;
        for (std::size_t i = 0; i < f.size(); ++i) ASSERT_LE(fs[i], gs[i] + slack) << trial << " node " << i;
    }
}

TEST(Rearrangement, SupportMustFit) {
    auto spec = testing_support::gaussian_spec();
    spec.params["a"] = 0.05;  // wide gaussian on a small box
    const auto g = GridParams::cube(2, 64, 2.0);
    const auto f = sample_function(spec, g);
    EXPECT_THROW(symmetric_rearrangement(f), std::domain_error);
}

TEST(Rearrangement, ThreeDimensionalBall) {
    auto spec = testing_support::gaussian_spec();
    spec.center = {0.4, 0.0, -0.3};
    const auto g = GridParams::cube(3, 64, 3.0);
    const auto f = sample_function(spec, g);
    const auto s = symmetric_rearrangement(f);
    for (double p : {1.0, 2.0}) EXPECT_LT(rel(lp_norm(s, p), lp_norm(f, p)), 0.02);
    EXPECT_EQ(s.max_abs(), f.max_abs());
}
