#pragma once

// Special functions and the sharp constants of the affine functional
// inequalities (Sobolev, log-Sobolev, Morrey, Nash, Gagliardo-Nirenberg).

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace affine {

inline constexpr double pi = std::numbers::pi;

/// Gamma function for 0 < x <= 170.
///
/// Lanczos rational approximation (g = 7, nine coefficients), relative error
/// below 1e-14 over the whole range. Arguments below 1/2 are shifted up with
/// the recurrence instead of the reflection formula.
inline double gamma_fn(double x) {
    if (!(x > 0.0) || !(x <= 170.0))
        throw std::domain_error("gamma_fn: argument must lie in (0, 170], got " + std::to_string(x));
    if (x < 0.5) return gamma_fn(x + 1.0) / x;
    static constexpr double g = 7.0;
    static constexpr std::array<double, 9> coef = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    const double z = x - 1.0;
    double series = coef[0];
    for (int i = 1; i < 9; ++i) series += coef[i] / (z + i);
    const double t = z + g + 0.5;
    // t^(z+1/2) split in two halves so neither factor overflows near x = 170.
    const double half = std::pow(t, 0.5 * (z + 0.5));
    return std::sqrt(2.0 * pi) * half * std::exp(-t) * half * series;
}

/// Volume of the unit ball, pi^{p/2} / Gamma(1 + p/2), for real index p >= 0.
inline double unit_ball_volume(double p) {
    if (!(p >= 0.0)) throw std::domain_error("unit_ball_volume: index must be >= 0");
    // Integer dimensions by V_n = (2 pi / n) V_{n-2}, exact to rounding (kappa_2 == pi).
    if (p == std::floor(p) && p <= 64.0) {
        const int n = static_cast<int>(p);
        double v = n % 2 == 0 ? 1.0 : 2.0;
        for (int k = n % 2 == 0 ? 2 : 3; k <= n; k += 2) v *= 2.0 * pi / k;
        return v;
    }
    return std::pow(pi, 0.5 * p) / gamma_fn(1.0 + 0.5 * p);
}

/// Bessel function of the first kind of order 0 or 1 on [0, 50].
///
/// Power series in extended precision up to x = 17 (largest term ~4e6, so
/// cancellation stays below 1e-12), Hankel asymptotic expansion beyond.
inline double bessel_j(int order, double x) {
    if (order != 0 && order != 1) throw std::domain_error("bessel_j: only orders 0 and 1 are supported");
    if (!(x >= 0.0) || !(x <= 50.0)) throw std::domain_error("bessel_j: argument must lie in [0, 50]");
    if (x <= 17.0) {
        const long double half = 0.5L * x;
        const long double q = -half * half;
        long double term = order == 0 ? 1.0L : half;
        long double sum = term;
        // Terms decay monotonically once k > x/2; stop when negligible but
        // never before the peak.
        for (int k = 1; k < 200; ++k) {
            term *= q / (static_cast<long double>(k) * (k + order));
            sum += term;
            if (k > half && std::fabs(term) < 1e-22L * (1.0L + std::fabs(sum))) break;
        }
        return static_cast<double>(sum);
    }
    // Hankel: J_v(x) = sqrt(2/(pi x)) (P cos w - Q sin w), w = x - v pi/2 - pi/4.
    const double mu = 4.0 * order * order;
    const double inv8x = 1.0 / (8.0 * x);
    double P = 1.0, Q = 0.0, term = 1.0;
    for (int k = 1; k < 80; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * (mu - odd * odd) * inv8x / k;
        // Asymptotic series: truncate at the smallest term.
        if (std::fabs(next) >= std::fabs(term) || std::fabs(next) < 1e-18) break;
        term = next;
        if (k % 2 == 1) {
            Q += (k % 4 == 1 ? 1.0 : -1.0) * term;
        } else {
            P += (k % 4 == 2 ? -1.0 : 1.0) * term;
        }
    }
    const double w = x - 0.5 * order * pi - 0.25 * pi;
    return std::sqrt(2.0 / (pi * x)) * (P * std::cos(w) - Q * std::sin(w));
}

namespace detail {
template <class F>
double bisect(F&& f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}
}  // namespace detail

/// First nonzero Neumann eigenvalue of -Laplace on radial functions of the unit ball.
inline double neumann_radial_eigenvalue(int n) {
    if (n == 2) {
        const double root = detail::bisect([](double x) { return bessel_j(1, x); }, 3.0, 4.5);
        return root * root;
    }
    if (n == 3) {
        // tan x = x, written without the pole at 3pi/2.
        const double root = detail::bisect([](double x) { return std::sin(x) - x * std::cos(x); },
                                           pi + 1e-9, 1.5 * pi - 1e-9);
        return root * root;
    }
    throw std::domain_error("neumann_radial_eigenvalue: only n = 2 and n = 3 are supported");
}

enum class ConstantKind { c_np, e_np, a_sobolev, b_logsob, alpha_morrey, beta_nash, gamma_gn, theta_gn, r_gn, kappa };

inline std::string_view to_string(ConstantKind kind) {
    switch (kind) {
        case ConstantKind::c_np: return "c_np";
        case ConstantKind::e_np: return "e_np";
        case ConstantKind::a_sobolev: return "a_sobolev";
        case ConstantKind::b_logsob: return "b_logsob";
        case ConstantKind::alpha_morrey: return "alpha_morrey";
        case ConstantKind::beta_nash: return "beta_nash";
        case ConstantKind::gamma_gn: return "gamma_gn";
        case ConstantKind::theta_gn: return "theta_gn";
        case ConstantKind::r_gn: return "r_gn";
        case ConstantKind::kappa: return "kappa";
    }
    return "?";
}

inline ConstantKind parse_constant_kind(std::string_view tag) {
    for (auto k : {ConstantKind::c_np, ConstantKind::e_np, ConstantKind::a_sobolev, ConstantKind::b_logsob,
                   ConstantKind::alpha_morrey, ConstantKind::beta_nash, ConstantKind::gamma_gn,
                   ConstantKind::theta_gn, ConstantKind::r_gn, ConstantKind::kappa})
        if (to_string(k) == tag) return k;
    throw std::invalid_argument("unknown constant kind '" + std::string(tag) + "'");
}

struct ConstantQuery {
    ConstantKind kind = ConstantKind::kappa;
    int n = 2;
    std::optional<double> p;
    std::optional<double> q;
};

/// Upper end p(n-1)/(n-p) of the Gagliardo-Nirenberg exponent range.
inline double gn_q_max(int n, double p) { return p * (n - 1) / (n - p); }

namespace detail {

inline double require_p(const ConstantQuery& query) {
    if (!query.p) throw std::domain_error(std::string(to_string(query.kind)) + ": parameter p is required");
    return *query.p;
}

inline void require_gn_range(int n, double p, double q) {
    if (!(p > 1.0 && p < n)) throw std::domain_error("gamma_gn: requires 1 < p < n");
    if (!(q > p && q <= gn_q_max(n, p) * (1.0 + 1e-15)))
        throw std::domain_error("gamma_gn: requires p < q <= p(n-1)/(n-p)");
}

inline double gn_theta(int n, double p, double q) { return n * (q - p) / ((q - 1.0) * (n * p - (n - p) * q)); }
inline double gn_r(double p, double q) { return p * (q - 1.0) / (p - 1.0); }

}  // namespace detail

/// Closed-form sharp constants. Throws std::domain_error outside the
/// parameter range of the corresponding inequality.
inline double sharp_constant(const ConstantQuery& query) {
    const int n = query.n;
    if (n < 2) throw std::domain_error("sharp_constant: dimension must be >= 2");
    const double dn = n;
    const double kn = unit_ball_volume(dn);
    switch (query.kind) {
        case ConstantKind::kappa: return kn;
        case ConstantKind::c_np: {
            const double p = detail::require_p(query);
            if (!(p >= 1.0)) throw std::domain_error("c_np: requires p >= 1");
            return std::pow(dn * kn, 1.0 / dn) *
                   std::pow(dn * kn * unit_ball_volume(p - 1.0) / (2.0 * unit_ball_volume(dn + p - 2.0)), 1.0 / p);
        }
        case ConstantKind::e_np: {
            const double p = detail::require_p(query);
            if (!(p >= 1.0)) throw std::domain_error("e_np: requires p >= 1");
            return unit_ball_volume(dn + p - 2.0) / (std::pow(dn, p / dn) * kn * unit_ball_volume(p - 1.0));
        }
        case ConstantKind::a_sobolev: {
            const double p = detail::require_p(query);
            if (!(p >= 1.0 && p < dn)) throw std::domain_error("a_sobolev: requires 1 <= p < n");
            // ((p-1)/(n-p))^{1-1/p} tends to 1 as p -> 1.
            const double power = p == 1.0 ? 1.0 : std::pow((p - 1.0) / (dn - p), 1.0 - 1.0 / p);
            return std::pow(dn, -1.0 / p) * power *
                   std::pow(gamma_fn(dn) / (kn * gamma_fn(dn / p) * gamma_fn(dn + 1.0 - dn / p)), 1.0 / dn);
        }
        case ConstantKind::b_logsob: {
            const double p = detail::require_p(query);
            if (!(p >= 1.0)) throw std::domain_error("b_logsob: requires p >= 1");
            if (p == 1.0) return std::pow(kn, -1.0 / dn) / dn;
            return std::pow(p / dn, 1.0 / p) * std::pow((p - 1.0) / std::numbers::e, 1.0 - 1.0 / p) *
                   std::pow(gamma_fn(1.0 + 0.5 * dn) /
                                (std::pow(pi, 0.5 * dn) * gamma_fn(1.0 + dn * (p - 1.0) / p)),
                            1.0 / dn);
        }
        case ConstantKind::alpha_morrey: {
            const double p = detail::require_p(query);
            if (!(p > dn)) throw std::domain_error("alpha_morrey: requires p > n");
            return std::pow(dn, -1.0 / p) * std::pow(kn, -1.0 / dn) *
                   std::pow((p - 1.0) / (p - dn), (p - 1.0) / p);
        }
        case ConstantKind::beta_nash: {
            // Carlen-Loss: beta_n^2 = 2 (1+n/2)^{1+2/n} / (n lambda_n kappa_n^{2/n}).
            const double lambda = neumann_radial_eigenvalue(n);
            const double beta2 = 2.0 * std::pow(1.0 + 0.5 * dn, 1.0 + 2.0 / dn) /
                                 (dn * lambda * std::pow(kn, 2.0 / dn));
            return std::sqrt(beta2);
        }
        case ConstantKind::theta_gn:
        case ConstantKind::r_gn:
        case ConstantKind::gamma_gn: {
            const double p = detail::require_p(query);
            if (!query.q) throw std::domain_error("gamma_gn: parameter q is required");
            const double q = *query.q;
            detail::require_gn_range(n, p, q);
            const double theta = detail::gn_theta(n, p, q);
            const double r = detail::gn_r(p, q);
            if (query.kind == ConstantKind::theta_gn) return theta;
            if (query.kind == ConstantKind::r_gn) return r;
            const double delta = dn * p - q * (dn - p);
            return std::pow((q - p) / (p * std::sqrt(pi)), theta) *
                   std::pow(p * q / (dn * (q - p)), theta / p) * std::pow(delta / (p * q), 1.0 / r) *
                   std::pow(gamma_fn(q * (p - 1.0) / (q - p)) * gamma_fn(1.0 + 0.5 * dn) /
                                (gamma_fn(delta * (p - 1.0) / (p * (q - p))) * gamma_fn(1.0 + dn * (p - 1.0) / p)),
                            theta / dn);
        }
    }
    throw std::domain_error("sharp_constant: unknown kind");
}

inline double sharp_constant(ConstantKind kind, int n, std::optional<double> p = std::nullopt,
                             std::optional<double> q = std::nullopt) {
    return sharp_constant(ConstantQuery{kind, n, p, q});
}

}  // namespace affine
