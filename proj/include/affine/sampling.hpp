#pragma once

// Named analytic function families and their evaluation on grids.

#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "grid.hpp"
#include "specfun.hpp"

namespace affine {

/// One term of a bump_sum: amplitude * profile(|x - center| / width), where
/// profile is exp(-r^2) ("gaussian") or (1 - r^2)_+^3 ("poly").
struct Bump {
    std::vector<double> center;
    double amplitude = 1.0;
    double width = 1.0;
    std::string profile = "gaussian";

    bool operator==(const Bump&) const = default;
};

/// A named family with scalar parameters. Radial families are evaluated at
/// rho = |x - center| / scale; `cutoff` R replaces g(rho) by (g(rho) - g(R))_+.
///
///   gaussian          amplitude * exp(-a rho^2)
///   sobolev_extremal  amplitude * (a + rho^{p/(p-1)})^{1-n/p}
///   logsob_extremal   amplitude * C(n,p,a) * exp(-rho^{p/(p-1)} / a)
///   morrey_extremal   amplitude * a * (1 - rho^e)_+, e = exponent or (p-n)/(p-1)
///   nash_extremal     amplitude * a * (u(rho) - u(1))_+, u = J_0(sqrt(lambda_2) r), n = 2
///   gn_extremal       amplitude * a * (1 + rho^{p/(p-1)})^{-(p-1)/(q-p)}
///   bump_sum          sum of `bumps`
///   sheared           inner(matrix * x)
struct AnalyticSpec {
    std::string family;
    std::map<std::string, double> params;
    std::vector<double> center;
    std::vector<Bump> bumps;
    std::shared_ptr<const AnalyticSpec> inner;
    std::vector<double> matrix;  // row-major n x n

    double param(const std::string& name, double fallback) const {
        const auto it = params.find(name);
        return it == params.end() ? fallback : it->second;
    }
    bool has(const std::string& name) const { return params.count(name) != 0; }

    bool operator==(const AnalyticSpec& o) const {
        const bool same_inner = (!inner && !o.inner) || (inner && o.inner && *inner == *o.inner);
        return family == o.family && params == o.params && center == o.center && bumps == o.bumps && same_inner &&
               matrix == o.matrix;
    }
};

inline const std::vector<std::string>& analytic_families() {
    static const std::vector<std::string> names{"gaussian",      "sobolev_extremal", "logsob_extremal", "morrey_extremal",
                                                "nash_extremal", "gn_extremal",      "bump_sum",        "sheared"};
    return names;
}

inline AnalyticSpec shear_spec(AnalyticSpec inner, std::vector<double> matrix) {
    AnalyticSpec s;
    s.family = "sheared";
    s.inner = std::make_shared<const AnalyticSpec>(std::move(inner));
    s.matrix = std::move(matrix);
    return s;
}

inline double determinant(const std::vector<double>& m, int n) {
    if (n == 2) return m[0] * m[3] - m[1] * m[2];
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) + m[2] * (m[3] * m[7] - m[4] * m[6]);
}

namespace detail {

inline void check_params(const AnalyticSpec& s, std::initializer_list<const char*> allowed) {
    std::set<std::string> ok{"amplitude", "scale", "cutoff"};
    for (const char* a : allowed) ok.insert(a);
    for (const auto& [k, v] : s.params) {
        if (!ok.count(k)) throw std::invalid_argument("analytic spec: family " + s.family + " has no parameter '" + k + "'");
        if (!std::isfinite(v)) throw std::invalid_argument("analytic spec: parameter '" + k + "' is not finite");
    }
}

/// Compiled form of a spec: evaluates f at a point of R^n.
class Evaluator {
public:
    Evaluator(const AnalyticSpec& s, int n) : spec_(s), n_(n) {
        const auto& fam = s.family;
        if (fam != "sheared" && !s.center.empty() && static_cast<int>(s.center.size()) != n)
            throw std::invalid_argument("analytic spec: center length must equal the grid dimension");
        amplitude_ = s.param("amplitude", 1.0);
        scale_ = s.param("scale", 1.0);
        if (!(scale_ > 0.0)) throw std::invalid_argument("analytic spec: scale must be positive");
        if (s.has("cutoff") && !(s.param("cutoff", 0.0) > 0.0)) throw std::invalid_argument("analytic spec: cutoff must be positive");
        const double a = s.param("a", 1.0);
        const double p = s.param("p", 2.0);
        if (fam == "gaussian") {
            check_params(s, {"a"});
            if (!(a > 0.0)) throw std::invalid_argument("gaussian: a must be positive");
            radial_ = [a](double r) { return std::exp(-a * r * r); };
        } else if (fam == "sobolev_extremal") {
            check_params(s, {"a", "p"});
            if (!(a > 0.0) || !(p > 1.0 && p < n)) throw std::invalid_argument("sobolev_extremal: need a > 0 and 1 < p < n");
            const double e = p / (p - 1.0), g = 1.0 - n / p;
            radial_ = [a, e, g](double r) { return std::pow(a + std::pow(r, e), g); };
        } else if (fam == "logsob_extremal") {
            check_params(s, {"a", "p"});
            if (!(a > 0.0) || !(p > 1.0)) throw std::invalid_argument("logsob_extremal: need a > 0 and p > 1");
            const double pref = std::pow(pi, 0.5 * n) * gamma_fn(1.0 + 0.5 * n) /
                                (std::pow(a, n * (p - 1.0) / p) * gamma_fn(1.0 + n * (p - 1.0) / p));
            const double e = p / (p - 1.0);
            radial_ = [pref, a, e](double r) { return pref * std::exp(-std::pow(r, e) / a); };
        } else if (fam == "morrey_extremal") {
            check_params(s, {"a", "p", "exponent"});
            double e = s.param("exponent", 0.0);
            if (!s.has("exponent")) {
                if (!(p > n)) throw std::invalid_argument("morrey_extremal: need p > n (or an explicit exponent)");
                e = (p - n) / (p - 1.0);
            }
            if (!(e > 0.0)) throw std::invalid_argument("morrey_extremal: exponent must be positive");
            radial_ = [a, e](double r) { return r >= 1.0 ? 0.0 : a * (1.0 - std::pow(r, e)); };
        } else if (fam == "nash_extremal") {
            check_params(s, {"a"});
            if (n != 2) throw std::invalid_argument("nash_extremal: only dimension 2 is supported");
            const double k = std::sqrt(neumann_radial_eigenvalue(2));
            const double u1 = bessel_j(0, k);
            const double norm = 1.0 - u1;
            radial_ = [a, k, u1, norm](double r) { return r >= 1.0 ? 0.0 : a * (bessel_j(0, k * r) - u1) / norm; };
        } else if (fam == "gn_extremal") {
            check_params(s, {"a", "p", "q"});
            const double q = s.param("q", 0.0);
            if (!(p > 1.0 && p < n) || !(q > p)) throw std::invalid_argument("gn_extremal: need 1 < p < n and q > p");
            const double e = p / (p - 1.0), g = -(p - 1.0) / (q - p);
            radial_ = [a, e, g](double r) { return a * std::pow(1.0 + std::pow(r, e), g); };
        } else if (fam == "bump_sum") {
            check_params(s, {});
            if (s.bumps.empty()) throw std::invalid_argument("bump_sum: needs at least one bump");
            for (const auto& b : s.bumps) {
                if (static_cast<int>(b.center.size()) != n) throw std::invalid_argument("bump_sum: bump center length must equal the grid dimension");
                if (!(b.width > 0.0)) throw std::invalid_argument("bump_sum: bump width must be positive");
                if (b.profile != "gaussian" && b.profile != "poly") throw std::invalid_argument("bump_sum: unknown bump profile " + b.profile);
            }
        } else if (fam == "sheared") {
            if (!s.params.empty()) throw std::invalid_argument("sheared: parameters belong to the inner spec");
            if (!s.inner) throw std::invalid_argument("sheared: missing inner spec");
            if (static_cast<int>(s.matrix.size()) != n * n) throw std::invalid_argument("sheared: matrix must be n x n");
            if (!(std::abs(determinant(s.matrix, n)) > 1e-12)) throw std::invalid_argument("sheared: matrix is singular");
            inner_ = std::make_shared<Evaluator>(*s.inner, n);
        } else {
            throw std::invalid_argument("analytic spec: unknown family '" + fam + "'");
        }
        if (radial_ && s.has("cutoff")) floor_ = radial_(s.param("cutoff", 0.0));
        cutoff_ = s.param("cutoff", kInfinity);
    }

    double operator()(const double* x) const {
        if (inner_) {
            double y[3] = {0, 0, 0};
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j) y[i] += spec_.matrix[i * n_ + j] * x[j];
            return (*inner_)(y);
        }
        if (radial_) {
            double r2 = 0.0;
            for (int k = 0; k < n_; ++k) {
                const double d = x[k] - (spec_.center.empty() ? 0.0 : spec_.center[k]);
                r2 += d * d;
            }
            const double r = std::sqrt(r2) / scale_;
            if (r >= cutoff_) return 0.0;
            return amplitude_ * std::max(0.0, radial_(r) - floor_);
        }
        double v = 0.0;
        for (const auto& b : spec_.bumps) {
            double r2 = 0.0;
            for (int k = 0; k < n_; ++k) {
                const double d = (x[k] - b.center[k]) / (b.width * scale_);
                r2 += d * d;
            }
            if (b.profile == "gaussian") {
                v += b.amplitude * std::exp(-r2);
            } else if (r2 < 1.0) {
                const double t = 1.0 - r2;
                v += b.amplitude * t * t * t;
            }
        }
        return amplitude_ * v;
    }

private:
    const AnalyticSpec& spec_;
    int n_;
    double amplitude_ = 1.0, scale_ = 1.0, floor_ = 0.0, cutoff_ = kInfinity;
    std::function<double(double)> radial_;
    std::shared_ptr<Evaluator> inner_;
};

inline std::vector<double> evaluate_on(const Evaluator& ev, const GridParams& g) {
    std::vector<double> v(g.cell_count(), 0.0);
    parallel_for(v.size(), [&](std::size_t i) {
        const auto idx = g.unravel(i);
        if (g.in_shell(idx, kBoundaryShell)) return;
        const auto x = g.point(i);
        double y = ev(x.data());
        if (!std::isfinite(y)) throw std::domain_error("sample_function: non-finite value");
        if (std::abs(y) < 1e-300) y = 0.0;
        v[i] = y;
    });
    return v;
}

}  // namespace detail

struct SampleOptions {
    bool strict = false;
    /// Required fraction of ||f||_1 inside the grid (checked against a grid of
    /// three times the extent).
    double mass_fraction = 0.999;
};

struct SampleDiagnostics {
    double mass_fraction = 1.0;
    bool truncated = false;
};

/// Samples spec at the grid nodes; values below 1e-300 are flushed to zero and
/// the boundary shell is forced to zero. In strict mode a grid holding less
/// than `mass_fraction` of the L^1 mass is an error; otherwise it is reported
/// through `diag`.
inline GridFunction sample_function(const AnalyticSpec& spec, const GridParams& grid, const SampleOptions& opts = {},
                                    SampleDiagnostics* diag = nullptr) {
    grid.validate();
    const detail::Evaluator ev(spec, grid.dim);
    auto values = detail::evaluate_on(ev, grid);

    // Same shape at three times the spacing, concentric with the grid.
    GridParams wide = grid;
    wide.spacing = 3.0 * grid.spacing;
    const auto c = grid.center();
    for (int k = 0; k < grid.dim; ++k) wide.origin[k] = c[k] - (grid.shape[k] / 2) * wide.spacing;
    const auto wide_values = detail::evaluate_on(ev, wide);
    double inside = 0.0, total = 0.0;
    for (std::size_t i = 0; i < wide_values.size(); ++i) {
        const double a = std::abs(wide_values[i]);
        total += a;
        const auto x = wide.point(i);
        bool in = true;
        for (int k = 0; k < grid.dim; ++k) {
            const double lo = grid.origin[k] + kBoundaryShell * grid.spacing;
            const double hi = grid.origin[k] + (grid.shape[k] - 1 - kBoundaryShell) * grid.spacing;
            in = in && x[k] >= lo && x[k] <= hi;
        }
        if (in) inside += a;
    }
    SampleDiagnostics d;
    d.mass_fraction = total > 0.0 ? inside / total : 1.0;
    d.truncated = d.mass_fraction < opts.mass_fraction;
    if (d.truncated && opts.strict)
        throw std::domain_error("sample_function: grid holds only " + std::to_string(d.mass_fraction) + " of the L1 mass");
    if (diag) *diag = d;
    return {grid, std::move(values)};
}

}  // namespace affine
