#pragma once

// Compactly supported functions sampled on uniform isotropic grids in R^2 and
// R^3: gradients, L^p norms, distribution functions and rearrangements.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "parallel.hpp"
#include "specfun.hpp"

namespace affine {

/// Node i of axis k sits at origin[k] + i * spacing.
struct GridParams {
    int dim = 2;
    std::vector<int> shape;
    std::vector<double> origin;
    double spacing = 1.0;

    /// Cube [-half_width, half_width)^dim with `cells` nodes per axis.
    static GridParams cube(int dim, int cells, double half_width) {
        return {dim, std::vector<int>(dim, cells), std::vector<double>(dim, -half_width), 2.0 * half_width / cells};
    }

    void validate() const {
        if (dim != 2 && dim != 3) throw std::invalid_argument("grid: dimension must be 2 or 3");
        if (static_cast<int>(shape.size()) != dim || static_cast<int>(origin.size()) != dim)
            throw std::invalid_argument("grid: shape/origin length must equal the dimension");
        for (int s : shape)
            if (s < 5) throw std::invalid_argument("grid: every axis needs at least 5 nodes");
        if (!(spacing > 0.0) || !std::isfinite(spacing)) throw std::invalid_argument("grid: spacing must be positive");
    }

    std::size_t cell_count() const {
        std::size_t n = 1;
        for (int s : shape) n *= static_cast<std::size_t>(s);
        return n;
    }
    double cell_volume() const { return std::pow(spacing, dim); }

    /// Row-major strides (last axis fastest).
    std::array<std::size_t, 3> strides() const {
        std::array<std::size_t, 3> st{0, 0, 0};
        std::size_t s = 1;
        for (int k = dim - 1; k >= 0; --k) {
            st[k] = s;
            s *= static_cast<std::size_t>(shape[k]);
        }
        return st;
    }

    std::array<int, 3> unravel(std::size_t index) const {
        std::array<int, 3> idx{0, 0, 0};
        for (int k = dim - 1; k >= 0; --k) {
            idx[k] = static_cast<int>(index % static_cast<std::size_t>(shape[k]));
            index /= static_cast<std::size_t>(shape[k]);
        }
        return idx;
    }

    std::array<double, 3> point(std::size_t index) const {
        const auto idx = unravel(index);
        std::array<double, 3> x{0, 0, 0};
        for (int k = 0; k < dim; ++k) x[k] = origin[k] + idx[k] * spacing;
        return x;
    }

    /// Node nearest the middle of the box: index floor(shape/2) per axis.
    std::array<double, 3> center() const {
        std::array<double, 3> c{0, 0, 0};
        for (int k = 0; k < dim; ++k) c[k] = origin[k] + (shape[k] / 2) * spacing;
        return c;
    }

    bool in_shell(const std::array<int, 3>& idx, int width) const {
        for (int k = 0; k < dim; ++k)
            if (idx[k] < width || idx[k] >= shape[k] - width) return true;
        return false;
    }

    bool operator==(const GridParams&) const = default;
};

/// Zero-shell width every grid function must respect.
inline constexpr int kBoundaryShell = 2;

/// Real function sampled at grid nodes, vanishing on a 2-node boundary shell.
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(GridParams grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
        grid_.validate();
        if (values_.size() != grid_.cell_count()) throw std::invalid_argument("grid function: value count does not match shape");
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i])) throw std::invalid_argument("grid function: non-finite value");
            if (values_[i] != 0.0 && grid_.in_shell(grid_.unravel(i), kBoundaryShell))
                throw std::invalid_argument("grid function: nonzero value on the boundary shell");
        }
    }

    const GridParams& grid() const { return grid_; }
    int dim() const { return grid_.dim; }
    double spacing() const { return grid_.spacing; }
    std::size_t size() const { return values_.size(); }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    /// Pointwise scaling, used for homogeneity checks and normalisation.
    GridFunction scaled(double factor) const {
        GridFunction out = *this;
        for (double& v : out.values_) v *= factor;
        return out;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::abs(v));
        return m;
    }

    bool is_zero() const { return max_abs() == 0.0; }

private:
    GridParams grid_;
    std::vector<double> values_;
};

enum class Stencil { central2, central4 };

/// One gradient vector per node, stored with stride `dim`.
struct GradientField {
    int dim = 2;
    std::vector<double> data;

    std::size_t size() const { return data.size() / static_cast<std::size_t>(dim); }
    std::span<const double> operator[](std::size_t i) const {
        return {data.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
    }
};

/// Central-difference gradient. central4 uses the 5-point stencil on nodes at
/// least two away from the box edge and falls back to central2 one node in;
/// edge nodes get a zero gradient.
inline GradientField gradient_field(const GridFunction& f, Stencil stencil = Stencil::central4) {
    const GridParams& g = f.grid();
    const auto st = g.strides();
    const double h = g.spacing;
    GradientField out{g.dim, std::vector<double>(f.size() * g.dim, 0.0)};
    const auto vals = f.values();
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto idx = g.unravel(i);
        for (int k = 0; k < g.dim; ++k) {
            const int j = idx[k], n = g.shape[k];
            const std::size_t s = st[k];
            double d = 0.0;
            if (stencil == Stencil::central4 && j >= 2 && j < n - 2) {
                d = (-vals[i + 2 * s] + 8.0 * vals[i + s] - 8.0 * vals[i - s] + vals[i - 2 * s]) / (12.0 * h);
            } else if (j >= 1 && j < n - 1) {
                d = (vals[i + s] - vals[i - s]) / (2.0 * h);
            }
            out.data[i * g.dim + k] = d;
        }
    }
    return out;
}

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// |x|^p with fast paths for the exponents the suites use most.
inline double pow_abs(double x, double p) {
    x = std::abs(x);
    if (p == 2.0) return x * x;
    if (p == 3.0) return x * x * x;
    if (p == 1.5) return x * std::sqrt(x);
    if (p == 1.0) return x;
    if (p == 4.0) return (x * x) * (x * x);
    return x == 0.0 ? 0.0 : std::pow(x, p);
}

/// (sum |f_i|^p h^n)^{1/p}; p = infinity gives max |f_i|.
inline double lp_norm(const GridFunction& f, double p) {
    if (p == kInfinity) return f.max_abs();
    if (!(p >= 1.0)) throw std::domain_error("lp_norm: requires p >= 1");
    double s = 0.0;
    for (double v : f.values()) s += pow_abs(v, p);
    return std::pow(s * f.grid().cell_volume(), 1.0 / p);
}

/// h^n times the number of nodes with |f_i| > eps_rel * ||f||_inf.
inline double support_volume(const GridFunction& f, double eps_rel = 1e-12) {
    if (!(eps_rel >= 0.0 && eps_rel < 1.0)) throw std::domain_error("support_volume: eps_rel must lie in [0, 1)");
    const double m = f.max_abs();
    if (m == 0.0) throw std::domain_error("support_volume: function is identically zero");
    const double cut = eps_rel * m;
    std::size_t count = 0;
    for (double v : f.values())
        if (std::abs(v) > cut) ++count;
    return static_cast<double>(count) * f.grid().cell_volume();
}

/// |f_i| sorted in decreasing order.
inline std::vector<double> sorted_magnitudes(const GridFunction& f) {
    std::vector<double> v(f.size());
    std::transform(f.values().begin(), f.values().end(), v.begin(), [](double x) { return std::abs(x); });
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

struct DistributionProfile {
    std::vector<double> thresholds;
    std::vector<double> masses;
};

/// mu_f(t_k) = h^n * #{i : |f_i| > t_k}, read off the exact value staircase.
inline DistributionProfile distribution_function(const GridFunction& f, std::span<const double> thresholds) {
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
        if (!(thresholds[k] > 0.0)) throw std::domain_error("distribution_function: thresholds must be positive");
        if (k > 0 && !(thresholds[k] > thresholds[k - 1]))
            throw std::domain_error("distribution_function: thresholds must be increasing");
    }
    const auto sorted = sorted_magnitudes(f);
    const double cell = f.grid().cell_volume();
    DistributionProfile out{{thresholds.begin(), thresholds.end()}, {}};
    out.masses.reserve(thresholds.size());
    for (double t : thresholds) {
        // sorted is decreasing: count of entries > t.
        const auto it = std::partition_point(sorted.begin(), sorted.end(), [t](double v) { return v > t; });
        out.masses.push_back(static_cast<double>(it - sorted.begin()) * cell);
    }
    return out;
}

struct DecreasingProfile {
    std::vector<double> s_grid;
    std::vector<double> values;
};

/// f^*(s) = sup{t : mu_f(t) > s}. On the staircase this is the
/// floor(s / h^n)-th largest |f_i| (zero past the end).
inline DecreasingProfile decreasing_rearrangement(const GridFunction& f, std::span<const double> s_grid) {
    for (std::size_t k = 0; k < s_grid.size(); ++k) {
        if (!(s_grid[k] >= 0.0)) throw std::domain_error("decreasing_rearrangement: s must be >= 0");
        if (k > 0 && !(s_grid[k] > s_grid[k - 1])) throw std::domain_error("decreasing_rearrangement: s must be increasing");
    }
    const auto sorted = sorted_magnitudes(f);
    const double cell = f.grid().cell_volume();
    DecreasingProfile out{{s_grid.begin(), s_grid.end()}, {}};
    out.values.reserve(s_grid.size());
    for (double s : s_grid) {
        const double k = std::floor(s / cell);
        out.values.push_back(k < static_cast<double>(sorted.size()) ? sorted[static_cast<std::size_t>(k)] : 0.0);
    }
    return out;
}

namespace detail {

/// P(w_1 U_1 + ... + w_m U_m <= x) for independent U_k ~ U[0,1], all w_k > 0
/// (inclusion-exclusion over subsets).
inline double uniform_sum_cdf(std::span<const double> w, double x) {
    const std::size_t m = w.size();
    if (m == 0) return x >= 0.0 ? 1.0 : 0.0;
    double total = 0.0, prod = 1.0;
    for (double v : w) {
        total += v;
        prod *= v;
    }
    if (x <= 0.0) return 0.0;
    if (x >= total) return 1.0;
    double fact = 1.0;
    for (std::size_t k = 2; k <= m; ++k) fact *= static_cast<double>(k);
    double s = 0.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        double shift = 0.0;
        int bits = 0;
        for (std::size_t k = 0; k < m; ++k)
            if (mask & (std::size_t{1} << k)) {
                shift += w[k];
                ++bits;
            }
        const double y = x - shift;
        if (y > 0.0) s += (bits % 2 ? -1.0 : 1.0) * std::pow(y, static_cast<double>(m));
    }
    return std::clamp(s / (fact * prod), 0.0, 1.0);
}

}  // namespace detail

/// Distribution function of the cell-wise linearisation of |f|: node i stands
/// for the cube of side h around it, on which |f| is replaced by
/// |f_i| + grad|f|_i . (x - x_i). Evaluated on `levels` equally spaced
/// thresholds in [0, ||f||_inf]; returns masses mu(t_j).
inline std::vector<double> linearized_distribution(const GridFunction& f, const GradientField& grad, int levels) {
    const double vmax = f.max_abs();
    const double dt = vmax / levels;
    const double h = f.spacing();
    const double cell = f.grid().cell_volume();
    const int n = f.dim();
    std::vector<double> full(levels + 2, 0.0);  // difference array for whole-cell counts
    std::vector<double> partial(levels + 1, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double v = std::abs(f[i]);
        std::array<double, 3> w{};
        double width = 0.0, wmax = 0.0;
        for (int k = 0; k < n; ++k) {
            w[k] = std::abs(grad[i][k]) * h;
            width += w[k];
            wmax = std::max(wmax, w[k]);
        }
        if (width == 0.0) {
            if (v == 0.0) continue;
            // Step at v: counts for every level t_j < v.
            const int jhi = static_cast<int>(std::ceil(v / dt)) - 1;  // last j with t_j < v
            full[0] += 1.0;
            full[std::min(jhi, levels) + 1] -= 1.0;
            continue;
        }
        std::array<double, 3> active{};
        std::size_t m = 0;
        for (int k = 0; k < n; ++k)
            if (w[k] > 1e-9 * wmax) active[m++] = w[k];
        const double lo = v - 0.5 * width, hi = v + 0.5 * width;
        // Levels below lo are exceeded by the whole cell.
        const int jlo = std::max(0, static_cast<int>(std::ceil(lo / dt)));  // first j with t_j >= lo
        if (jlo > 0) {
            full[0] += 1.0;
            full[std::min(jlo, levels + 1)] -= 1.0;
        }
        const int jhi = std::min(levels, static_cast<int>(std::ceil(hi / dt)) - 1);
        for (int j = jlo; j <= jhi; ++j) {
            const double t = j * dt;
            partial[j] += 1.0 - detail::uniform_sum_cdf(std::span<const double>(active.data(), m), t - lo);
        }
    }
    std::vector<double> mu(levels + 1);
    double run = 0.0;
    for (int j = 0; j <= levels; ++j) {
        run += full[j];
        mu[j] = (run + partial[j]) * cell;
    }
    return mu;
}

/// Number of threshold levels used by symmetric_rearrangement.
inline constexpr int kRearrangementLevels = 4096;

/// f-star(x) = f^*(kappa_n |x - c|^n) on the same grid, c = grid().center().
/// f^* inverts the linearised distribution function (piecewise linear in
/// the threshold), so level sets of f-star are not snapped to the lattice; the
/// centre node carries ||f||_inf exactly. Throws if f-star does not vanish
/// (to 1e-3 ||f||_inf) on the largest ball that fits inside the zero shell.
inline GridFunction symmetric_rearrangement(const GridFunction& f) {
    const GridParams& g = f.grid();
    const double vmax = f.max_abs();
    if (vmax == 0.0) return f;
    const int levels = kRearrangementLevels;
    const auto mu = linearized_distribution(f, gradient_field(f, Stencil::central4), levels);
    const double dt = vmax / levels;
    const double kappa = unit_ball_volume(g.dim);

    // Right-continuous inverse of the nonincreasing piecewise-linear mu(t).
    auto invert = [&](double s) {
        if (s >= mu[0]) return 0.0;
        if (s <= mu[levels]) return vmax;
        // First j with mu[j] <= s; mu[j-1] > s.
        int lo = 0, hi = levels;
        while (hi - lo > 1) {
            const int mid = (lo + hi) / 2;
            (mu[mid] > s ? lo : hi) = mid;
        }
        const double frac = (mu[lo] - s) / (mu[lo] - mu[hi]);
        return std::min(vmax, (lo + frac) * dt);
    };

    const auto c = g.center();
    double r_in = kInfinity;
    for (int k = 0; k < g.dim; ++k) {
        const double lo = g.origin[k] + (kBoundaryShell - 1) * g.spacing;
        const double hi = g.origin[k] + (g.shape[k] - kBoundaryShell) * g.spacing;
        r_in = std::min({r_in, c[k] - lo, hi - c[k]});
    }
    if (invert(kappa * std::pow(r_in, g.dim)) > 1e-3 * vmax)
        throw std::domain_error("symmetric_rearrangement: rearranged support does not fit inside the grid");

    std::vector<double> out(f.size(), 0.0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto idx = g.unravel(i);
        if (g.in_shell(idx, kBoundaryShell)) continue;
        const auto x = g.point(i);
        double r2 = 0.0;
        for (int k = 0; k < g.dim; ++k) r2 += (x[k] - c[k]) * (x[k] - c[k]);
        out[i] = r2 == 0.0 ? vmax : invert(kappa * std::pow(r2, 0.5 * g.dim));
    }
    return {g, std::move(out)};
}

}  // namespace affine
