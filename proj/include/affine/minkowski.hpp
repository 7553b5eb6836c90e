#pragma once

// Discrete volume-normalised L^p Minkowski problem: given atoms (u_j, alpha_j)
// find P with F_j(P) = V(P) h_j^{p-1} alpha_j.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "convexgeom.hpp"
#include "sphere.hpp"

namespace affine {

struct SolverOptions {
    double tol = 1e-10;
    int max_iter = 10000;
    double step0 = 0.1;
    double backtrack = 0.5;

    void validate() const {
        if (!(tol > 0.0)) throw std::invalid_argument("solver options: tol must be positive");
        if (max_iter < 1) throw std::invalid_argument("solver options: max_iter must be >= 1");
        if (!(step0 > 0.0)) throw std::invalid_argument("solver options: step0 must be positive");
        if (!(backtrack > 0.0 && backtrack < 1.0)) throw std::invalid_argument("solver options: backtrack must lie in (0, 1)");
    }
};

struct SolverResult {
    Polytope polytope;
    double residual = 0.0;
    int iterations = 0;
    double normalization_check = 0.0;
    bool converged = false;
    std::string message;
    /// Volume after every accepted iteration, starting with the initial body.
    std::vector<double> volumes;
};

/// (1/n) sum_j alpha_j h_j^p.
inline double lp_normalization(const DiscreteSphereMeasure& mu, std::span<const double> h, double p) {
    double s = 0.0;
    for (std::size_t j = 0; j < h.size(); ++j) s += mu.weights[j] * std::pow(h[j], p);
    return s / mu.dim();
}

namespace detail {

inline std::vector<std::size_t> match_atoms(const Polytope& P, const DiscreteSphereMeasure& mu) {
    if (P.dim() != mu.dim()) throw std::invalid_argument("residual: dimension mismatch");
    std::vector<std::size_t> idx(mu.size());
    for (std::size_t j = 0; j < mu.size(); ++j) {
        bool found = false;
        if (j < P.facet_count() && P.normals()[j].size() == mu.directions[j].size()) {
            double d = 0.0;
            for (int k = 0; k < P.dim(); ++k) d += std::abs(P.normal(j)[k] - mu.directions[j][k]);
            if (d <= 1e-12) idx[j] = j, found = true;
        }
        for (std::size_t i = 0; !found && i < P.facet_count(); ++i) {
            double d = 0.0;
            for (int k = 0; k < P.dim(); ++k) d += std::abs(P.normal(i)[k] - mu.directions[j][k]);
            if (d <= 1e-12) idx[j] = i, found = true;
        }
        if (!found) throw std::invalid_argument("residual: atom direction " + std::to_string(j) + " is not a facet normal of P");
    }
    return idx;
}

}  // namespace detail

/// max_j |F_j - V h_j^{p-1} alpha_j| / (V alpha_j h_j^{p-1}).
inline double residual(const Polytope& P, const DiscreteSphereMeasure& mu, double p) {
    if (!(p > 1.0)) throw std::domain_error("residual: requires p > 1");
    const auto idx = detail::match_atoms(P, mu);
    const double V = P.volume();
    double worst = 0.0;
    for (std::size_t j = 0; j < mu.size(); ++j) {
        const std::size_t i = idx[j];
        const double target = V * std::pow(P.support()[i], p - 1.0) * mu.weights[j];
        worst = std::max(worst, std::abs(P.facet_areas()[i] - target) / target);
    }
    return worst;
}

/// Volume lower bound kappa_n (n / mu(S))^{n/p}, and whether
/// sum_j alpha_j (u . u_j)_+^p >= n / c^p holds on the gate probes.
inline std::pair<double, bool> feasibility_bounds(const DiscreteSphereMeasure& mu, double p, double c) {
    if (!(p > 1.0)) throw std::domain_error("feasibility_bounds: requires p > 1");
    if (!(c > 0.0)) throw std::domain_error("feasibility_bounds: requires c > 0");
    const int n = mu.dim();
    const double bound = unit_ball_volume(n) * std::pow(n / mu.total_mass(), n / p);
    const auto probes = gate_probes(n);
    const double need = n / std::pow(c, p);
    bool ok = true;
    for (std::size_t i = 0; i < probes.size() && ok; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < mu.size(); ++j) s += mu.weights[j] * pow_abs(std::max(0.0, dot(probes[i], mu.directions[j])), p);
        ok = s >= need;
    }
    return {bound, ok};
}

/// Maximises V(P(h)) on {(1/n) sum alpha_j h_j^p = 1}.
///
/// Ascent phase: projected gradient of V (the facet-area vector F) in the
/// metric diag(V alpha_j h_j^{p-2}), i.e. d_j = F_j / (V alpha_j h_j^{p-2}) - h_j,
/// which is tangent to the constraint. Each trial point is rescaled onto the
/// constraint and the step is backtracked until V does not decrease.
/// Polish phase: once the residual is below `polish_below`, damped Newton on
/// F_j - V alpha_j h_j^{p-1} = 0 (finite-difference Jacobian of F), each
/// iterate again rescaled onto the constraint and accepted only if the
/// residual drops and V does not decrease beyond rounding.
inline SolverResult solve_normalized(const DiscreteSphereMeasure& mu, double p, const SolverOptions& opts = {}) {
    opts.validate();
    if (!(p > 1.0)) throw std::domain_error("solve_normalized: requires p > 1");
    const int n = mu.dim();
    const std::size_t k = mu.size();
    if (k < static_cast<std::size_t>(n + 1)) throw std::invalid_argument("solve_normalized: need at least n + 1 atoms");
    if (!passes_hemisphere_gate(mu)) throw std::domain_error("solve_normalized: measure is concentrated on a closed hemisphere");
    constexpr double polish_below = 1e-2;

    auto rescale = [&](std::vector<double>& h) {
        const double s = std::pow(lp_normalization(mu, h, p), -1.0 / p);
        for (double& x : h) x *= s;
    };
    auto defect = [&](const Polytope& P) {
        std::vector<double> phi(k);
        for (std::size_t j = 0; j < k; ++j) phi[j] = P.facet_areas()[j] - P.volume() * mu.weights[j] * std::pow(P.support()[j], p - 1.0);
        return phi;
    };
    auto residual_of = [&](const Polytope& P) {
        double worst = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            const double target = P.volume() * std::pow(P.support()[j], p - 1.0) * mu.weights[j];
            worst = std::max(worst, std::abs(P.facet_areas()[j] - target) / target);
        }
        return worst;
    };
    auto build = [&](const std::vector<double>& h) -> std::optional<Polytope> {
        for (double x : h)
            if (!(x > 0.0) || !std::isfinite(x)) return std::nullopt;
        try {
            return polytope_from_support(mu.directions, h);
        } catch (const std::domain_error&) {
            return std::nullopt;
        }
    };

    std::vector<double> h(k, std::pow(n / mu.total_mass(), 1.0 / p));
    rescale(h);
    SolverResult out;
    Polytope P = polytope_from_support(mu.directions, h);
    out.volumes.push_back(P.volume());
    double res = residual_of(P);
    double step = opts.step0;
    int it = 0;
    while (res > opts.tol && res > polish_below && it < opts.max_iter) {
        ++it;
        std::vector<double> d(k);
        for (std::size_t j = 0; j < k; ++j)
            d[j] = P.facet_areas()[j] / (P.volume() * mu.weights[j] * std::pow(h[j], p - 2.0)) - h[j];
        bool accepted = false;
        for (; step > 1e-12; step *= opts.backtrack) {
            std::vector<double> trial(k);
            for (std::size_t j = 0; j < k; ++j) trial[j] = h[j] + step * d[j];
            rescale(trial);
            auto Q = build(trial);
            if (Q && Q->volume() >= P.volume()) {
                h = std::move(trial);
                P = std::move(*Q);
                accepted = true;
                break;
            }
        }
        if (!accepted) break;  // V is flat to rounding: hand over to the polish phase
        out.volumes.push_back(P.volume());
        res = residual_of(P);
        step = std::min(1.0, step / opts.backtrack);
    }

    while (res > opts.tol && it < opts.max_iter) {
        ++it;
        const auto phi = defect(P);
        Eigen::MatrixXd J(k, k);
        for (std::size_t i = 0; i < k; ++i) {
            const double eta = 1e-6 * h[i];
            auto hp = h, hm = h;
            hp[i] += eta;
            hm[i] -= eta;
            const auto Pp = build(hp), Pm = build(hm);
            if (!Pp || !Pm) break;
            for (std::size_t j = 0; j < k; ++j) J(j, i) = (Pp->facet_areas()[j] - Pm->facet_areas()[j]) / (2.0 * eta);
        }
        // d/dh_i of V alpha_j h_j^{p-1} = F_i alpha_j h_j^{p-1} + [i = j] V alpha_j (p-1) h_j^{p-2}.
        Eigen::VectorXd rhs(k);
        for (std::size_t j = 0; j < k; ++j) {
            const double aj = mu.weights[j] * std::pow(h[j], p - 1.0);
            for (std::size_t i = 0; i < k; ++i) J(j, i) -= P.facet_areas()[i] * aj;
            J(j, j) -= P.volume() * mu.weights[j] * (p - 1.0) * std::pow(h[j], p - 2.0);
            rhs(j) = -phi[j];
        }
        const Eigen::VectorXd delta = J.fullPivLu().solve(rhs);
        bool accepted = false;
        for (double t = 1.0; t > 1e-6; t *= 0.5) {
            std::vector<double> trial(k);
            for (std::size_t j = 0; j < k; ++j) trial[j] = h[j] + t * delta(static_cast<Eigen::Index>(j));
            if (*std::min_element(trial.begin(), trial.end()) <= 0.0) continue;
            rescale(trial);
            auto Q = build(trial);
            if (!Q) continue;
            const double r = residual_of(*Q);
            // V is flat to second order here; allow rounding-level ties.
            if (r < res && Q->volume() >= P.volume() * (1.0 - 1e-13)) {
                h = std::move(trial);
                P = std::move(*Q);
                res = r;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            out.message = "newton polish stalled";
            break;
        }
        out.volumes.push_back(P.volume());
    }

    out.iterations = it;
    out.residual = res;
    out.normalization_check = lp_normalization(mu, P.support(), p);
    bool all_facets = true;
    for (double F : P.facet_areas()) all_facets = all_facets && F > 0.0;
    out.converged = res <= opts.tol && all_facets;
    if (out.message.empty()) {
        if (!all_facets)
            out.message = "some atom has no facet";
        else if (!out.converged)
            out.message = "max_iter reached";
        else
            out.message = "converged";
    }
    out.polytope = std::move(P);
    return out;
}

/// Atoms with directions uniform on the sphere and weights uniform in
/// [0.5, 1.5], redrawn until the hemisphere gate passes.
inline DiscreteSphereMeasure random_measure(int dim, int atoms, std::uint64_t seed) {
    if (atoms < dim + 1) throw std::invalid_argument("random_measure: need at least dim + 1 atoms");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif(0.5, 1.5);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<double> c, w;
        for (int j = 0; j < atoms; ++j) {
            std::vector<double> v(dim);
            double len = 0.0;
            do {
                for (double& x : v) x = gauss(rng);
                len = norm(v);
            } while (len < 1e-8);
            for (double x : v) c.push_back(x / len);
            w.push_back(unif(rng));
        }
        DiscreteSphereMeasure mu(dim, std::move(c), std::move(w));
        if (passes_hemisphere_gate(mu)) return mu;
    }
    throw std::runtime_error("random_measure: could not draw a measure passing the hemisphere gate");
}

}  // namespace affine
