#pragma once

// Convex polytopes given by facet normals and support numbers, their surface
// area measures, mixed volumes and L^p projection bodies.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "energy.hpp"
#include "parallel.hpp"
#include "report.hpp"
#include "sphere.hpp"

namespace affine {

/// P = {x : x . u_j <= h_j for all j}. Redundant halfspaces stay in the list
/// with facet area 0 so indices match the input.
class Polytope {
public:
    Polytope() = default;

    int dim() const { return normals_.dim(); }
    std::size_t facet_count() const { return support_.size(); }
    const SpherePoints& normals() const { return normals_; }
    std::span<const double> normal(std::size_t j) const { return normals_[j]; }
    const std::vector<double>& support() const { return support_; }
    const std::vector<double>& facet_areas() const { return areas_; }
    /// Vertices, stride dim(); counter-clockwise in the plane.
    const std::vector<double>& vertices() const { return vertices_; }
    std::size_t vertex_count() const { return vertices_.size() / static_cast<std::size_t>(dim()); }
    std::span<const double> vertex(std::size_t i) const {
        return {vertices_.data() + i * static_cast<std::size_t>(dim()), static_cast<std::size_t>(dim())};
    }
    double volume() const { return volume_; }

    /// h(P, u) = max over vertices of x . u.
    double support_at(std::span<const double> u) const {
        double best = -kInfinity;
        for (std::size_t i = 0; i < vertex_count(); ++i) best = std::max(best, dot(vertex(i), u));
        return best;
    }

    friend Polytope polytope_from_support(const SpherePoints& normals, std::vector<double> support);

private:
    SpherePoints normals_;
    std::vector<double> support_;
    std::vector<double> areas_;
    std::vector<double> vertices_;
    double volume_ = 0.0;
};

namespace detail {

inline std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

/// Planar halfplane intersection: angular sort, then repeated removal of
/// facets whose neighbours' lines meet inside them.
inline void build_polygon(const SpherePoints& normals, const std::vector<double>& h, std::vector<double>& areas,
                          std::vector<double>& verts) {
    const std::size_t m = h.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> angle(m);
    for (std::size_t j = 0; j < m; ++j) angle[j] = std::atan2(normals[j][1], normals[j][0]);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return angle[a] != angle[b] ? angle[a] < angle[b] : h[a] < h[b];
    });
    // Duplicate normals: only the tightest (first after the sort) survives.
    std::vector<std::size_t> ring;
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t j = order[k];
        if (!ring.empty()) {
            const std::size_t last = ring.back();
            if (std::abs(normals[j][0] - normals[last][0]) < 1e-15 && std::abs(normals[j][1] - normals[last][1]) < 1e-15) continue;
        }
        ring.push_back(j);
    }
    if (ring.size() >= 2) {
        const std::size_t a = ring.front(), b = ring.back();
        if (std::abs(normals[a][0] - normals[b][0]) < 1e-15 && std::abs(normals[a][1] - normals[b][1]) < 1e-15) ring.pop_back();
    }
    auto gap = [&](std::size_t a, std::size_t b) {
        double g = angle[b] - angle[a];
        if (g <= 0.0) g += 2.0 * pi;
        return g;
    };
    if (ring.size() < 3) throw std::domain_error("polytope: normals do not positively span the plane (unbounded)");
    for (std::size_t k = 0; k < ring.size(); ++k)
        if (gap(ring[k], ring[(k + 1) % ring.size()]) >= pi - 1e-12)
            throw std::domain_error("polytope: normals do not positively span the plane (unbounded)");

    auto meet = [&](std::size_t a, std::size_t b) {
        const double a0 = normals[a][0], a1 = normals[a][1], b0 = normals[b][0], b1 = normals[b][1];
        const double det = a0 * b1 - a1 * b0;
        return std::array<double, 2>{(h[a] * b1 - h[b] * a1) / det, (a0 * h[b] - b0 * h[a]) / det};
    };
    const std::size_t r = ring.size();
    std::vector<std::size_t> prev(r), next(r);
    for (std::size_t k = 0; k < r; ++k) {
        prev[k] = (k + r - 1) % r;
        next[k] = (k + 1) % r;
    }
    std::vector<char> alive(r, 1);
    std::size_t live = r;
    std::vector<std::size_t> work(r);
    std::iota(work.begin(), work.end(), 0);
    while (!work.empty()) {
        const std::size_t k = work.back();
        work.pop_back();
        if (!alive[k] || live <= 3) continue;
        const std::size_t a = prev[k], b = next[k];
        if (gap(ring[a], ring[b]) >= pi) continue;  // k is needed to close the polygon
        const auto x = meet(ring[a], ring[b]);
        const std::size_t j = ring[k];
        const double scale = std::max({std::abs(h[j]), std::abs(x[0]), std::abs(x[1])});
        if (normals[j][0] * x[0] + normals[j][1] * x[1] <= h[j] + 1e-13 * scale) {
            alive[k] = 0;
            --live;
            next[a] = b;
            prev[b] = a;
            work.push_back(a);
            work.push_back(b);
        }
    }
    std::size_t start = 0;
    while (!alive[start]) ++start;
    areas.assign(m, 0.0);
    verts.clear();
    std::size_t k = start;
    do {
        const auto x = meet(ring[k], ring[next[k]]);
        verts.push_back(x[0]);
        verts.push_back(x[1]);
        k = next[k];
    } while (k != start);
    const std::size_t nv = verts.size() / 2;
    // Facet k runs from vertex(prev k, k) to vertex(k, next k).
    std::size_t idx = 0;
    k = start;
    do {
        const std::size_t pv = (idx + nv - 1) % nv;
        areas[ring[k]] = std::hypot(verts[2 * idx] - verts[2 * pv], verts[2 * idx + 1] - verts[2 * pv + 1]);
        k = next[k];
        ++idx;
    } while (k != start);
}

/// Convex hull of points containing the origin in its interior; triangles
/// oriented outward.
inline std::vector<std::array<std::size_t, 3>> hull_3d(const std::vector<std::array<double, 3>>& pts) {
    const std::size_t m = pts.size();
    if (m < 4) throw std::domain_error("polytope: need at least 4 normals in dimension 3");
    double scale = 0.0;
    for (const auto& p : pts) scale = std::max(scale, std::sqrt(dot3(p, p)));
    const double eps = 1e-12 * scale;
    auto sub = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
        return std::array<double, 3>{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
    };
    // Initial tetrahedron from well-separated points.
    std::size_t i0 = 0, i1 = 0, i2 = 0, i3 = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto d = sub(pts[i], pts[i0]);
        if (dot3(d, d) > best) best = dot3(d, d), i1 = i;
    }
    best = -1.0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto c = cross(sub(pts[i1], pts[i0]), sub(pts[i], pts[i0]));
        if (dot3(c, c) > best) best = dot3(c, c), i2 = i;
    }
    const auto n012 = cross(sub(pts[i1], pts[i0]), sub(pts[i2], pts[i0]));
    best = -1.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double v = std::abs(dot3(n012, sub(pts[i], pts[i0])));
        if (v > best) best = v, i3 = i;
    }
    if (!(best > 1e-10 * scale * scale * scale)) throw std::domain_error("polytope: normals do not positively span R^3 (unbounded)");

    struct Face {
        std::array<std::size_t, 3> v;
        std::array<double, 3> nrm;
        double off;
        bool alive;
    };
    std::array<double, 3> inside{};
    for (std::size_t v : {i0, i1, i2, i3})
        for (int k = 0; k < 3; ++k) inside[k] += 0.25 * pts[v][k];
    std::vector<Face> faces;
    auto add_face = [&](std::size_t a, std::size_t b, std::size_t c) {
        auto nrm = cross(sub(pts[b], pts[a]), sub(pts[c], pts[a]));
        const double len = std::sqrt(dot3(nrm, nrm));
        for (double& x : nrm) x /= len;
        double off = dot3(nrm, pts[a]);
        if (off < dot3(nrm, inside)) {  // orient away from the interior point
            std::swap(b, c);
            for (double& x : nrm) x = -x;
            off = -off;
        }
        faces.push_back({{a, b, c}, nrm, off, true});
    };
    add_face(i0, i1, i2);
    add_face(i0, i1, i3);
    add_face(i0, i2, i3);
    add_face(i1, i2, i3);

    for (std::size_t i = 0; i < m; ++i) {
        if (i == i0 || i == i1 || i == i2 || i == i3) continue;
        std::map<std::pair<std::size_t, std::size_t>, int> edges;
        bool visible_any = false;
        for (auto& f : faces) {
            if (!f.alive) continue;
            if (dot3(f.nrm, pts[i]) - f.off > eps) {
                f.alive = false;
                visible_any = true;
                for (int e = 0; e < 3; ++e) edges[{f.v[e], f.v[(e + 1) % 3]}] += 1;
            }
        }
        if (!visible_any) continue;
        for (const auto& [e, cnt] : edges)
            if (!edges.count({e.second, e.first})) add_face(e.first, e.second, i);
        faces.erase(std::remove_if(faces.begin(), faces.end(), [](const Face& f) { return !f.alive; }), faces.end());
    }
    std::vector<std::array<std::size_t, 3>> out;
    for (const auto& f : faces) {
        if (!(f.off > eps)) throw std::domain_error("polytope: origin is not interior (normals do not positively span)");
        out.push_back(f.v);
    }
    return out;
}

inline void build_polyhedron(const SpherePoints& normals, const std::vector<double>& h, std::vector<double>& areas,
                             std::vector<double>& verts) {
    const std::size_t m = h.size();
    std::vector<std::array<double, 3>> dual(m);
    for (std::size_t j = 0; j < m; ++j)
        for (int k = 0; k < 3; ++k) dual[j][k] = normals[j][k] / h[j];
    const auto tris = hull_3d(dual);

    // Each hull triangle is a vertex of P: the point solving x . u_j = h_j on its three facets.
    auto solve = [&](const std::array<std::size_t, 3>& t) {
        const auto& a = dual[t[0]];
        const auto& b = dual[t[1]];
        const auto& c = dual[t[2]];
        const auto bc = cross(b, c), ca = cross(c, a), ab = cross(a, b);
        const double det = dot3(a, bc);
        return std::array<double, 3>{(bc[0] + ca[0] + ab[0]) / det, (bc[1] + ca[1] + ab[1]) / det,
                                     (bc[2] + ca[2] + ab[2]) / det};
    };
    std::vector<std::array<double, 3>> corner(tris.size());
    std::vector<std::vector<std::size_t>> incident(m);
    for (std::size_t t = 0; t < tris.size(); ++t) {
        corner[t] = solve(tris[t]);
        for (std::size_t v : tris[t]) incident[v].push_back(t);
    }
    areas.assign(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        if (incident[j].size() < 3) continue;
        const std::array<double, 3> u{normals[j][0], normals[j][1], normals[j][2]};
        std::array<double, 3> c{0, 0, 0};
        for (std::size_t t : incident[j])
            for (int k = 0; k < 3; ++k) c[k] += corner[t][k] / static_cast<double>(incident[j].size());
        const std::array<double, 3> e1 = std::abs(u[0]) < 0.9 ? cross(u, {1, 0, 0}) : cross(u, {0, 1, 0});
        const double l1 = std::sqrt(dot3(e1, e1));
        const std::array<double, 3> a1{e1[0] / l1, e1[1] / l1, e1[2] / l1};
        const auto a2 = cross(u, a1);
        std::vector<std::pair<double, std::array<double, 2>>> ring;
        for (std::size_t t : incident[j]) {
            const std::array<double, 3> d{corner[t][0] - c[0], corner[t][1] - c[1], corner[t][2] - c[2]};
            const double x = dot3(d, a1), y = dot3(d, a2);
            ring.push_back({std::atan2(y, x), {x, y}});
        }
        std::sort(ring.begin(), ring.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        double s = 0.0;
        for (std::size_t k = 0; k < ring.size(); ++k) {
            const auto& p = ring[k].second;
            const auto& q = ring[(k + 1) % ring.size()].second;
            s += p[0] * q[1] - p[1] * q[0];
        }
        areas[j] = 0.5 * std::abs(s);
    }
    // Distinct vertices (triangles sharing a corner collapse).
    verts.clear();
    std::vector<std::array<double, 3>> uniq;
    for (const auto& x : corner) {
        bool dup = false;
        for (const auto& y : uniq)
            if (std::abs(x[0] - y[0]) + std::abs(x[1] - y[1]) + std::abs(x[2] - y[2]) <
                1e-12 * (1.0 + std::abs(x[0]) + std::abs(x[1]) + std::abs(x[2]))) {
                dup = true;
                break;
            }
        if (!dup) uniq.push_back(x);
    }
    for (const auto& x : uniq) verts.insert(verts.end(), x.begin(), x.end());
}

}  // namespace detail

/// Halfspace intersection. Requires h_j > 0 and positively spanning normals.
inline Polytope polytope_from_support(const SpherePoints& normals, std::vector<double> support) {
    if (normals.dim() != 2 && normals.dim() != 3) throw std::invalid_argument("polytope: dimension must be 2 or 3");
    if (support.size() != normals.size()) throw std::invalid_argument("polytope: support count does not match normal count");
    for (double h : support)
        if (!(h > 0.0) || !std::isfinite(h)) throw std::domain_error("polytope: support numbers must be positive (origin interior)");
    Polytope P;
    P.normals_ = normals;
    P.support_ = std::move(support);
    if (normals.dim() == 2)
        detail::build_polygon(P.normals_, P.support_, P.areas_, P.vertices_);
    else
        detail::build_polyhedron(P.normals_, P.support_, P.areas_, P.vertices_);
    double v = 0.0;
    for (std::size_t j = 0; j < P.support_.size(); ++j) v += P.support_[j] * P.areas_[j];
    P.volume_ = v / normals.dim();
    if (!(P.volume_ > 0.0)) throw std::domain_error("polytope: empty interior");
    return P;
}

inline Polytope polytope_from_support(int dim, std::vector<double> normals, std::vector<double> support) {
    return polytope_from_support(SpherePoints(dim, std::move(normals)), std::move(support));
}

/// |sum_j F_j u_j| / sum_j F_j (zero for a closed surface).
inline double closedness_defect(const Polytope& P) {
    std::vector<double> s(P.dim(), 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < P.facet_count(); ++j) {
        for (int k = 0; k < P.dim(); ++k) s[k] += P.facet_areas()[j] * P.normal(j)[k];
        total += P.facet_areas()[j];
    }
    return norm(s) / total;
}

/// Atoms (u_j, F_j) for the facets of positive area.
inline DiscreteSphereMeasure surface_area_measure(const Polytope& P) {
    std::vector<double> coords, w;
    for (std::size_t j = 0; j < P.facet_count(); ++j) {
        if (!(P.facet_areas()[j] > 0.0)) continue;
        const auto u = P.normal(j);
        coords.insert(coords.end(), u.begin(), u.end());
        w.push_back(P.facet_areas()[j]);
    }
    return {SpherePoints(P.dim(), std::move(coords)), std::move(w)};
}

/// V(K*) = (1/n) int h(K,u)^{-n} du.
inline double polar_volume(const SupportProfile& h) {
    if (h.values.size() != h.ds.size()) throw std::invalid_argument("polar_volume: profile size does not match direction set");
    double s = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!(h.values[i] > 0.0)) throw std::domain_error("polar_volume: profile must be strictly positive");
        s += h.ds.weights[i] * std::pow(h.values[i], -h.ds.dim());
    }
    return s / h.ds.dim();
}

/// Support function of a polytope sampled on ds.
inline SupportProfile support_profile_of(const Polytope& P, const DirectionSet& ds) {
    if (P.dim() != ds.dim()) throw std::invalid_argument("support_profile_of: dimension mismatch");
    std::vector<double> v(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) v[i] = P.support_at(ds[i]);
    return {ds, std::move(v)};
}

/// (a h_K^p + b h_L^p)^{1/p} pointwise.
inline SupportProfile lp_combination(const SupportProfile& hK, const SupportProfile& hL, double a, double b, double p) {
    if (!(hK.ds == hL.ds)) throw std::invalid_argument("lp_combination: profiles use different direction sets");
    if (!(p >= 1.0)) throw std::domain_error("lp_combination: requires p >= 1");
    if (!(a >= 0.0 && b >= 0.0) || a + b == 0.0) throw std::domain_error("lp_combination: coefficients must be nonnegative, not both zero");
    std::vector<double> v(hK.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(a * std::pow(hK.values[i], p) + b * std::pow(hL.values[i], p), 1.0 / p);
    return {hK.ds, std::move(v)};
}

/// V_1(M, K) = (1/n) sum_j h(K, u_j) F_j(M).
inline double mixed_volume_v1(const Polytope& M, const Polytope& K) {
    if (M.dim() != K.dim()) throw std::invalid_argument("mixed_volume_v1: dimension mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j < M.facet_count(); ++j)
        if (M.facet_areas()[j] > 0.0) s += K.support_at(M.normal(j)) * M.facet_areas()[j];
    return s / M.dim();
}

/// V_p(K, L) = (1/n) sum_j h(L, u_j)^p h_j(K)^{1-p} F_j(K).
inline double lp_mixed_volume(const Polytope& K, const Polytope& L, double p) {
    if (K.dim() != L.dim()) throw std::invalid_argument("lp_mixed_volume: dimension mismatch");
    if (!(p >= 1.0)) throw std::domain_error("lp_mixed_volume: requires p >= 1");
    double s = 0.0;
    for (std::size_t j = 0; j < K.facet_count(); ++j) {
        const double F = K.facet_areas()[j];
        if (F > 0.0) s += std::pow(L.support_at(K.normal(j)), p) * std::pow(K.support()[j], 1.0 - p) * F;
    }
    return s / K.dim();
}

namespace detail {

/// h(u)^p = sum_j phi(u . u_j) h_j^{1-p} F_j for the given kernel phi.
template <class Kernel>
SupportProfile projection_profile(const Polytope& P, double p, const DirectionSet& ds, Kernel phi) {
    if (!(p >= 1.0)) throw std::domain_error("projection body: requires p >= 1");
    if (P.dim() != ds.dim()) throw std::invalid_argument("projection body: dimension mismatch");
    std::vector<double> coef(P.facet_count());
    for (std::size_t j = 0; j < coef.size(); ++j) coef[j] = std::pow(P.support()[j], 1.0 - p) * P.facet_areas()[j];
    std::vector<double> v(ds.size());
    parallel_for(ds.size(), [&](std::size_t i) {
        double s = 0.0;
        for (std::size_t j = 0; j < coef.size(); ++j)
            if (coef[j] > 0.0) s += phi(dot(ds[i], P.normal(j))) * coef[j];
        v[i] = std::pow(s, 1.0 / p);
    });
    return {ds, std::move(v)};
}

}  // namespace detail

/// Support function of the asymmetric L^p projection body Pi_p^+ P.
inline SupportProfile projection_body_plus(const Polytope& P, double p, const DirectionSet& ds) {
    return detail::projection_profile(P, p, ds, [p](double t) { return t > 0.0 ? pow_abs(t, p) : 0.0; });
}

/// Support function of Pi_p P = 1/2 . Pi_p^+ P +_p 1/2 . Pi_p^- P.
inline SupportProfile projection_body_sym(const Polytope& P, double p, const DirectionSet& ds) {
    return detail::projection_profile(P, p, ds, [p](double t) { return 0.5 * pow_abs(t, p); });
}

/// (kappa_n kappa_{p-1} / kappa_{n+p-2})^{n/p}.
inline double petty_bound(int n, double p) {
    return std::pow(unit_ball_volume(n) * unit_ball_volume(p - 1.0) / unit_ball_volume(n + p - 2.0), n / p);
}

/// V(P)^{n/p-1} V(Pi_p^{+,*} P) against its sharp upper bound.
inline InequalityReport petty_functional_plus(const Polytope& P, double p, const DirectionSet& ds, double tolerance = 1e-2) {
    if (!(p > 1.0)) throw std::domain_error("petty_functional_plus: requires p > 1");
    const int n = P.dim();
    const double polar = polar_volume(projection_body_plus(P, p, ds));
    const double lhs = std::pow(P.volume(), n / p - 1.0) * polar;
    auto r = make_report("petty", n, p, std::nullopt, lhs, petty_bound(n, p), tolerance);
    r.metadata["volume"] = P.volume();
    r.metadata["polar_projection_volume"] = polar;
    // V(Pi_p^* P) <= V(Pi_p^{+,*} P) by convexity of h^{-n}.
    r.metadata["polar_projection_volume_sym"] = polar_volume(projection_body_sym(P, p, ds));
    r.metadata["facets"] = P.facet_count();
    r.metadata["directions"] = ds.size();
    return r;
}

/// Normals uniform on the sphere (redrawn until the body is bounded), support
/// numbers uniform in [h_lo, h_hi].
inline Polytope random_polytope(int dim, int facets, std::uint64_t seed, double h_lo = 0.5, double h_hi = 1.5) {
    if (facets < dim + 1) throw std::invalid_argument("random_polytope: need at least dim + 1 facets");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif(h_lo, h_hi);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<double> c;
        std::vector<double> h;
        for (int j = 0; j < facets; ++j) {
            std::vector<double> v(dim);
            double len = 0.0;
            do {
                for (double& x : v) x = gauss(rng);
                len = norm(v);
            } while (len < 1e-8);
            for (double x : v) c.push_back(x / len);
            h.push_back(unif(rng));
        }
        SpherePoints normals(dim, std::move(c));
        DiscreteSphereMeasure probe(normals, std::vector<double>(facets, 1.0));
        if (!passes_hemisphere_gate(probe)) continue;
        try {
            return polytope_from_support(normals, std::move(h));
        } catch (const std::domain_error&) {
            continue;
        }
    }
    throw std::runtime_error("random_polytope: could not draw a bounded polytope");
}

/// Regular polygon with `m` facets and inradius r, first normal e_1.
inline Polytope regular_polygon(int m, double r = 1.0) {
    const auto ds = make_direction_set(2, m);
    return polytope_from_support(ds.directions, std::vector<double>(m, r));
}

/// Image of P under the linear map A (row-major n x n, invertible): normals
/// A^{-T} u_j normalised, support numbers scaled accordingly.
inline Polytope transform_polytope(const Polytope& P, const std::vector<double>& A) {
    const int n = P.dim();
    if (static_cast<int>(A.size()) != n * n) throw std::invalid_argument("transform_polytope: matrix must be n x n");
    std::vector<double> inv(n * n);
    if (n == 2) {
        const double det = A[0] * A[3] - A[1] * A[2];
        inv = {A[3] / det, -A[1] / det, -A[2] / det, A[0] / det};
    } else {
        const double det = A[0] * (A[4] * A[8] - A[5] * A[7]) - A[1] * (A[3] * A[8] - A[5] * A[6]) + A[2] * (A[3] * A[7] - A[4] * A[6]);
        inv = {(A[4] * A[8] - A[5] * A[7]) / det, (A[2] * A[7] - A[1] * A[8]) / det, (A[1] * A[5] - A[2] * A[4]) / det,
               (A[5] * A[6] - A[3] * A[8]) / det, (A[0] * A[8] - A[2] * A[6]) / det, (A[2] * A[3] - A[0] * A[5]) / det,
               (A[3] * A[7] - A[4] * A[6]) / det, (A[1] * A[6] - A[0] * A[7]) / det, (A[0] * A[4] - A[1] * A[3]) / det};
    }
    // {Ax : x.u <= h} = {y : (A^{-T} u).y <= h}.
    std::vector<double> c;
    std::vector<double> h;
    for (std::size_t j = 0; j < P.facet_count(); ++j) {
        std::vector<double> w(n, 0.0);
        for (int r = 0; r < n; ++r)
            for (int k = 0; k < n; ++k) w[r] += inv[k * n + r] * P.normal(j)[k];
        const double len = norm(w);
        for (double x : w) c.push_back(x / len);
        h.push_back(P.support()[j] / len);
    }
    return polytope_from_support(SpherePoints(n, std::move(c)), std::move(h));
}

}  // namespace affine
