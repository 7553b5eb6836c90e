#pragma once

// Small helpers shared by the test suites: seeded generators for property
// tests (no property-testing library is available) and a few oracles.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <affine/grid.hpp>
#include <affine/sampling.hpp>
#include <affine/sphere.hpp>

namespace testing_support {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    /// Random det-1 matrix: rotation * diag(s, 1/s) * shear.
    std::vector<double> sl2(double max_stretch = 1.5) {
        const double th = uniform(0.0, 2.0 * M_PI), s = uniform(1.0 / max_stretch, max_stretch), k = uniform(-0.8, 0.8);
        const double c = std::cos(th), sn = std::sin(th);
        // R * D * [[1,k],[0,1]]
        const double a = s, b = s * k, d = 1.0 / s;
        return {c * a, c * b - sn * d, sn * a, sn * b + c * d};
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline affine::AnalyticSpec gaussian_spec(double a = 1.0) {
    affine::AnalyticSpec s;
    s.family = "gaussian";
    s.params = {{"a", a}};
    return s;
}

inline affine::GridFunction sample(const affine::AnalyticSpec& s, const affine::GridParams& g) { return affine::sample_function(s, g); }

/// Grid function from a callable evaluated at the nodes, shell zeroed.
template <class F>
affine::GridFunction from_callable(const affine::GridParams& g, F&& fn) {
    std::vector<double> v(g.cell_count(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (g.in_shell(g.unravel(i), affine::kBoundaryShell)) continue;
        const auto x = g.point(i);
        v[i] = fn(x);
    }
    return affine::GridFunction(g, std::move(v));
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace testing_support
