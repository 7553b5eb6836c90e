#pragma once

// Direction sets with quadrature weights on S^{n-1}, and finitely supported
// measures on the sphere.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "specfun.hpp"

namespace affine {

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

/// Surface area n kappa_n of S^{n-1}.
inline double sphere_area(int n) { return n * unit_ball_volume(n); }

/// Points on S^{n-1} stored row-major with stride `dim`.
class SpherePoints {
public:
    SpherePoints() = default;
    SpherePoints(int dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
        if (dim_ < 2) throw std::invalid_argument("sphere points: dimension must be >= 2");
        if (coords_.size() % static_cast<std::size_t>(dim_) != 0)
            throw std::invalid_argument("sphere points: coordinate count is not a multiple of the dimension");
        for (std::size_t i = 0; i < size(); ++i)
            if (std::abs(norm((*this)[i]) - 1.0) > 1e-12)
                throw std::invalid_argument("sphere points: direction " + std::to_string(i) + " is not a unit vector");
    }

    int dim() const { return dim_; }
    std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / static_cast<std::size_t>(dim_); }
    std::span<const double> operator[](std::size_t i) const {
        return {coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
    }
    const std::vector<double>& coords() const { return coords_; }

    bool operator==(const SpherePoints&) const = default;

private:
    int dim_ = 0;
    std::vector<double> coords_;
};

/// Quadrature rule on S^{n-1}: unit directions with positive surface weights.
struct DirectionSet {
    SpherePoints directions;
    std::vector<double> weights;

    DirectionSet() = default;
    DirectionSet(SpherePoints dirs, std::vector<double> w) : directions(std::move(dirs)), weights(std::move(w)) {
        if (weights.size() != directions.size())
            throw std::invalid_argument("direction set: weight count does not match direction count");
        for (double x : weights)
            if (!(x > 0.0)) throw std::invalid_argument("direction set: weights must be positive");
    }

    int dim() const { return directions.dim(); }
    std::size_t size() const { return directions.size(); }
    std::span<const double> operator[](std::size_t i) const { return directions[i]; }

    bool operator==(const DirectionSet&) const = default;
};

/// Deterministic rule: m equally spaced angles (n = 2) or an m-point
/// Fibonacci lattice (n = 3), equal weights summing to |S^{n-1}|.
inline DirectionSet make_direction_set(int dim, int m) {
    if (dim == 2) {
        if (m < 4) throw std::invalid_argument("make_direction_set: need m >= 4 in dimension 2");
        std::vector<double> c(2 * static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
            // Exact axis directions at multiples of m/4 keep the 4-point rule exact.
            const double t = 2.0 * pi * i / m;
            double x = std::cos(t), y = std::sin(t);
            if (4 * i % m == 0) {
                const int quarter = 4 * i / m;
                x = quarter == 0 ? 1.0 : quarter == 2 ? -1.0 : 0.0;
                y = quarter == 1 ? 1.0 : quarter == 3 ? -1.0 : 0.0;
            }
            c[2 * i] = x;
            c[2 * i + 1] = y;
        }
        return {SpherePoints(2, std::move(c)), std::vector<double>(m, 2.0 * pi / m)};
    }
    if (dim == 3) {
        if (m < 32) throw std::invalid_argument("make_direction_set: need m >= 32 in dimension 3");
        const double golden = pi * (3.0 - std::sqrt(5.0));
        std::vector<double> c(3 * static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
            const double z = 1.0 - (2.0 * i + 1.0) / m;
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double phi = golden * i;
            double v[3] = {r * std::cos(phi), r * std::sin(phi), z};
            const double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
            for (int k = 0; k < 3; ++k) c[3 * i + k] = v[k] / len;
        }
        return {SpherePoints(3, std::move(c)), std::vector<double>(m, 4.0 * pi / m)};
    }
    throw std::invalid_argument("make_direction_set: only dimensions 2 and 3 are supported (use make_random_direction_set)");
}

/// Monte Carlo rule for any n >= 2 (experimental; not used by the verified suites).
inline DirectionSet make_random_direction_set(int dim, int m, std::uint64_t seed) {
    if (dim < 2 || m < 1) throw std::invalid_argument("make_random_direction_set: need dim >= 2, m >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<double> c;
    c.reserve(static_cast<std::size_t>(dim) * m);
    for (int i = 0; i < m; ++i) {
        std::vector<double> v(dim);
        double len = 0.0;
        do {
            for (double& x : v) x = gauss(rng);
            len = norm(v);
        } while (len < 1e-8);
        for (double x : v) c.push_back(x / len);
    }
    return {SpherePoints(dim, std::move(c)), std::vector<double>(m, sphere_area(dim) / m)};
}

/// Sum of w_i * values_i.
inline double integrate_sphere(const DirectionSet& ds, std::span<const double> values) {
    if (values.size() != ds.size()) throw std::invalid_argument("integrate_sphere: value count does not match direction count");
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += ds.weights[i] * values[i];
    return s;
}

/// Positive measure sum_j alpha_j delta_{u_j} on S^{n-1}.
struct DiscreteSphereMeasure {
    SpherePoints directions;
    std::vector<double> weights;

    DiscreteSphereMeasure() = default;
    DiscreteSphereMeasure(SpherePoints dirs, std::vector<double> w) : directions(std::move(dirs)), weights(std::move(w)) {
        if (weights.size() != directions.size())
            throw std::invalid_argument("sphere measure: weight count does not match atom count");
        for (double x : weights)
            if (!(x > 0.0)) throw std::invalid_argument("sphere measure: atom weights must be positive");
    }
    DiscreteSphereMeasure(int dim, std::vector<double> coords, std::vector<double> w)
        : DiscreteSphereMeasure(SpherePoints(dim, std::move(coords)), std::move(w)) {}

    int dim() const { return directions.dim(); }
    std::size_t size() const { return directions.size(); }
    double total_mass() const {
        double s = 0.0;
        for (double x : weights) s += x;
        return s;
    }
};

/// min over probe directions u of sum_j alpha_j (u . u_j)_+.
inline double hemisphere_mass_min(const DiscreteSphereMeasure& mu, const DirectionSet& probes) {
    if (probes.size() == 0) throw std::invalid_argument("hemisphere_mass_min: empty probe set");
    if (probes.dim() != mu.dim()) throw std::invalid_argument("hemisphere_mass_min: dimension mismatch");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < probes.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < mu.size(); ++j) s += mu.weights[j] * std::max(0.0, dot(probes[i], mu.directions[j]));
        best = std::min(best, s);
    }
    return best;
}

/// Probe rule used by the feasibility gate: 720 directions (n = 2), 2000 (n = 3).
inline DirectionSet gate_probes(int dim) { return make_direction_set(dim, dim == 2 ? 720 : 2000); }

/// True iff the measure is not concentrated on a closed hemisphere, judged on
/// the probe rule with threshold 1e-8 * total mass.
inline bool passes_hemisphere_gate(const DiscreteSphereMeasure& mu) {
    return hemisphere_mass_min(mu, gate_probes(mu.dim())) > 1e-8 * mu.total_mass();
}

}  // namespace affine
