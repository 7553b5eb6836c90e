#pragma once

// Directional half-norms, the support profile u -> ||D_u^+ f||_p, and the
// affine energies built from it.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "grid.hpp"
#include "parallel.hpp"
#include "specfun.hpp"
#include "sphere.hpp"

namespace affine {

/// Positive function on a direction set (support function samples).
struct SupportProfile {
    DirectionSet ds;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
};

namespace detail {

/// Gradients of the nodes where the gradient is nonzero, packed with stride n.
struct PackedGradient {
    int dim = 2;
    std::vector<double> g;
    double cell = 1.0;
};

inline PackedGradient pack_gradient(const GridFunction& f, Stencil stencil) {
    const auto field = gradient_field(f, stencil);
    PackedGradient out{f.dim(), {}, f.grid().cell_volume()};
    for (std::size_t i = 0; i < field.size(); ++i) {
        const auto v = field[i];
        bool nonzero = false;
        for (double x : v) nonzero = nonzero || x != 0.0;
        if (nonzero) out.g.insert(out.g.end(), v.begin(), v.end());
    }
    return out;
}

/// Sum over nodes of ((grad f . u)_+)^p and ((grad f . u)_-)^p.
inline std::pair<double, double> directional_sums(const PackedGradient& pg, std::span<const double> u, double p) {
    double plus = 0.0, minus = 0.0;
    const std::size_t n = static_cast<std::size_t>(pg.dim);
    const std::size_t count = pg.g.size() / n;
    const double* g = pg.g.data();
    if (n == 2) {
        const double u0 = u[0], u1 = u[1];
        for (std::size_t i = 0; i < count; ++i) {
            const double d = g[2 * i] * u0 + g[2 * i + 1] * u1;
            (d > 0.0 ? plus : minus) += pow_abs(d, p);
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            double d = 0.0;
            for (std::size_t k = 0; k < n; ++k) d += g[n * i + k] * u[k];
            (d > 0.0 ? plus : minus) += pow_abs(d, p);
        }
    }
    return {plus * pg.cell, minus * pg.cell};
}

inline void check_energy_p(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) throw std::domain_error("energy: requires finite p > 1");
}

inline void check_dims(const GridFunction& f, const DirectionSet& ds) {
    if (ds.dim() != f.dim()) throw std::invalid_argument("energy: direction set dimension does not match the grid");
    if (ds.size() == 0) throw std::invalid_argument("energy: empty direction set");
}

inline void check_unit(std::span<const double> u, int dim) {
    if (static_cast<int>(u.size()) != dim) throw std::invalid_argument("half_norm: direction has the wrong dimension");
    if (std::abs(norm(u) - 1.0) > 1e-12) throw std::invalid_argument("half_norm: direction is not a unit vector");
}

/// (1/n) * sum_i w_i h_i^{-n}; rejects profiles that are not bounded away from 0.
inline double polar_integral(const DirectionSet& ds, std::span<const double> h) {
    const double hmax = *std::max_element(h.begin(), h.end());
    if (!(hmax > 0.0)) throw std::domain_error("energy: function is trivial (zero profile)");
    double s = 0.0;
    const int n = ds.dim();
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!(h[i] > 1e-12 * hmax)) throw std::domain_error("energy: support profile vanishes in some direction");
        s += ds.weights[i] * std::pow(h[i], -n);
    }
    return s;
}

}  // namespace detail

/// c_{n,p} = (n kappa_n)^{1/n} (n kappa_n kappa_{p-1} / (2 kappa_{n+p-2}))^{1/p}.
inline double energy_constant(int n, double p) { return sharp_constant(ConstantKind::c_np, n, p); }

/// ||D_u^+ f||_p with the 4th-order gradient.
inline double half_norm(const GridFunction& f, std::span<const double> u, double p) {
    detail::check_energy_p(p);
    detail::check_unit(u, f.dim());
    const auto pg = detail::pack_gradient(f, Stencil::central4);
    return std::pow(detail::directional_sums(pg, u, p).first, 1.0 / p);
}

/// Half-norm and full directional norm profiles evaluated together.
struct DirectionalProfiles {
    SupportProfile plus;  // ||D_u^+ f||_p
    SupportProfile full;  // ||D_u f||_p
};

inline DirectionalProfiles directional_profiles(const GridFunction& f, const DirectionSet& ds, double p) {
    detail::check_energy_p(p);
    detail::check_dims(f, ds);
    if (f.is_zero()) throw std::domain_error("energy: function is identically zero");
    const auto pg = detail::pack_gradient(f, Stencil::central4);
    std::vector<double> plus(ds.size()), full(ds.size());
    parallel_for(ds.size(), [&](std::size_t i) {
        const auto [a, b] = detail::directional_sums(pg, ds[i], p);
        plus[i] = std::pow(a, 1.0 / p);
        full[i] = std::pow(a + b, 1.0 / p);
    });
    return {{ds, std::move(plus)}, {ds, std::move(full)}};
}

/// h_f(u) = ||D_u^+ f||_p on every direction of ds.
inline SupportProfile support_profile(const GridFunction& f, const DirectionSet& ds, double p) {
    return std::move(directional_profiles(f, ds, p).plus);
}

/// 2^{1/p} c_{n,p} (int ||D_u^+ f||_p^{-n} du)^{-1/n}.
inline double energy_from_plus_profile(const SupportProfile& h, double p) {
    const int n = h.ds.dim();
    return std::pow(2.0, 1.0 / p) * energy_constant(n, p) * std::pow(detail::polar_integral(h.ds, h.values), -1.0 / n);
}

/// c_{n,p} (int ||D_u f||_p^{-n} du)^{-1/n}.
inline double energy_from_full_profile(const SupportProfile& h, double p) {
    const int n = h.ds.dim();
    return energy_constant(n, p) * std::pow(detail::polar_integral(h.ds, h.values), -1.0 / n);
}

inline double affine_energy_plus(const GridFunction& f, const DirectionSet& ds, double p) {
    return energy_from_plus_profile(support_profile(f, ds, p), p);
}

inline double affine_energy_sym(const GridFunction& f, const DirectionSet& ds, double p) {
    return energy_from_full_profile(directional_profiles(f, ds, p).full, p);
}

/// ||grad f||_p = (sum |grad f_i|^p h^n)^{1/p}.
inline double gradient_lp(const GridFunction& f, double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw std::domain_error("gradient_lp: requires finite p >= 1");
    const auto field = gradient_field(f, Stencil::central4);
    double s = 0.0;
    for (std::size_t i = 0; i < field.size(); ++i) {
        double r2 = 0.0;
        for (double x : field[i]) r2 += x * x;
        s += p == 2.0 ? r2 : std::pow(r2, 0.5 * p);
    }
    return std::pow(s * f.grid().cell_volume(), 1.0 / p);
}

/// E_p^+(f), E_p(f) and ||grad f||_p from one gradient evaluation.
struct EnergyTriple {
    double plus = 0.0;
    double sym = 0.0;
    double grad = 0.0;
};

inline EnergyTriple energy_triple(const GridFunction& f, const DirectionSet& ds, double p) {
    const auto prof = directional_profiles(f, ds, p);
    return {energy_from_plus_profile(prof.plus, p), energy_from_full_profile(prof.full, p), gradient_lp(f, p)};
}

/// ||D_u^+ f||_inf = max_i (grad f_i . u)_+ on every direction (2nd-order gradient).
inline SupportProfile support_profile_inf(const GridFunction& f, const DirectionSet& ds) {
    detail::check_dims(f, ds);
    if (f.is_zero()) throw std::domain_error("energy: function is identically zero");
    const auto pg = detail::pack_gradient(f, Stencil::central2);
    const std::size_t n = static_cast<std::size_t>(pg.dim);
    std::vector<double> vals(ds.size());
    parallel_for(ds.size(), [&](std::size_t i) {
        const auto u = ds[i];
        double best = 0.0;
        for (std::size_t j = 0; j < pg.g.size(); j += n) {
            double d = 0.0;
            for (std::size_t k = 0; k < n; ++k) d += pg.g[j + k] * u[k];
            best = std::max(best, d);
        }
        vals[i] = best;
    });
    return {ds, std::move(vals)};
}

/// E_inf^+(f) = (int ||D_u^+ f||_inf^{-n} du)^{-1/n}, no constant prefactor.
inline double affine_energy_inf_plus(const GridFunction& f, const DirectionSet& ds) {
    const auto h = support_profile_inf(f, ds);
    return std::pow(detail::polar_integral(ds, h.values), -1.0 / ds.dim());
}

}  // namespace affine
