#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "spectral_bounds/error.hpp"
#include "spectral_bounds/problem.hpp"

namespace spectral_bounds::extremal {

namespace detail {

using spectral_bounds::detail::require;

inline constexpr int max_binomial_power = 64;

inline const std::array<std::array<double, max_binomial_power + 1>, max_binomial_power + 1>& pascal()
{
    static const auto table = [] {
        std::array<std::array<double, max_binomial_power + 1>, max_binomial_power + 1> c{};
        for (int p = 0; p <= max_binomial_power; ++p) {
            c[p][0] = 1.0;
            for (int j = 1; j <= p; ++j) {
                c[p][j] = c[p - 1][j - 1] + (j <= p - 1 ? c[p - 1][j] : 0.0);
            }
        }
        return c;
    }();
    return table;
}

inline double binomial(int p, int j) { return pascal()[p][j]; }

// sum_{i=0}^{m-1} u^i
inline double geometric_sum(double u, int m)
{
    double s = 0.0;
    for (int i = m - 1; i >= 0; --i) s = s * u + 1.0;
    return s;
}

// (2/q) * sum_{j odd, 3 <= j <= q} C(q,j) 2^{-j} u^{q-j} zeta^{3-j}
// i.e. the non-leading odd part of ((eta+1/2)^q - (eta-1/2)^q)/q scaled by zeta^{-(q-3)}.
inline double odd_tail_scaled(int q, double u, double zeta)
{
    double s = 0.0;
    for (int j = 3; j <= q; j += 2) {
        s += binomial(q, j) * std::ldexp(1.0, -j) * std::pow(u, q - j) * std::pow(zeta, 3 - j);
    }
    return 2.0 * s / q;
}

} // namespace detail

/// (t+1)^p - t^p evaluated as sum_{j<p} C(p,j) t^j, which avoids the
/// cancellation of the difference form for large t.
inline double binomial_diff(double t, int p)
{
    spectral_bounds::detail::require(t >= 0.0, ErrorKind::invalid_argument, "binomial_diff needs t >= 0");
    spectral_bounds::detail::require(p >= 1 && p <= detail::max_binomial_power, ErrorKind::invalid_argument,
                                     "binomial_diff needs 1 <= p <= 64");
    double acc = 0.0;
    for (int j = p - 1; j >= 0; --j) {
        acc = acc * t + detail::binomial(p, j);
    }
    spectral_bounds::detail::require(std::isfinite(acc), ErrorKind::overflow,
                                     "binomial_diff overflowed for p = " + std::to_string(p));
    return acc;
}

enum class RootMethod { numeric, exact3, exact4, asymptotic };

inline std::string_view to_string(RootMethod m)
{
    switch (m) {
    case RootMethod::numeric: return "numeric";
    case RootMethod::exact3: return "exact3";
    case RootMethod::exact4: return "exact4";
    case RootMethod::asymptotic: return "asymptotic";
    }
    return "unknown";
}

/// Root t >= 0 of (t+1)^{n+1} - t^{n+1} = k_star.
struct RootSolution {
    int n = 2;
    double k_star = 1.0;
    double t = 0.0;
    RootMethod method = RootMethod::numeric;
    double residual = 0.0;
    /// eta - zeta with eta = t + 1/2, evaluated without forming the difference.
    double eta_offset = 0.0;
};

/// zeta = (k_star / (n+1))^{1/n}.
inline double zeta_of(int n, double k_star) { return std::pow(k_star / (n + 1), 1.0 / n); }

/// eta - zeta for the exact root, from the root equation itself:
/// eta^n - zeta^n = -(2/(n+1)) sum_{j odd >= 3} C(n+1,j) 2^{-j} eta^{n+1-j}.
inline double eta_offset_from_root(int n, double eta, double zeta)
{
    const double u = eta / zeta;
    const double delta_times_zeta = -detail::odd_tail_scaled(n + 1, u, zeta) / detail::geometric_sum(u, n);
    return delta_times_zeta / zeta;
}

/// eta - zeta from the truncated large-zeta expansion
/// eta = zeta - (n-1)/24 zeta^{-1} + (n-1)(n-3)(2n+1)/5760 zeta^{-3}.
inline double eta_correction(int n, double k_star, int terms)
{
    spectral_bounds::detail::require(terms >= 1 && terms <= 3, ErrorKind::invalid_argument,
                                     "asymptotic expansion supports 1 to 3 terms");
    const double zeta = zeta_of(n, k_star);
    spectral_bounds::detail::require(zeta >= 1.0, ErrorKind::out_of_range,
                                     "asymptotic expansion needs zeta = (k*/(n+1))^{1/n} >= 1");
    double c = 0.0;
    if (terms >= 2) c -= (n - 1) / 24.0 / zeta;
    if (terms >= 3) c += (n - 1.0) * (n - 3.0) * (2.0 * n + 1.0) / 5760.0 / (zeta * zeta * zeta);
    return c;
}

inline double eta_asymptotic(int n, double k_star, int terms)
{
    return zeta_of(n, k_star) + eta_correction(n, k_star, terms);
}

namespace detail {

inline RootSolution finish(int n, double k_star, double t, RootMethod method)
{
    RootSolution r;
    r.n = n;
    r.k_star = k_star;
    r.t = t;
    r.method = method;
    r.residual = binomial_diff(t, n + 1) - k_star;
    r.eta_offset = eta_offset_from_root(n, t + 0.5, zeta_of(n, k_star));
    return r;
}

inline double solve_numeric(int n, double k_star)
{
    const int p = n + 1;
    const double zeta = zeta_of(n, k_star);
    double lo = std::max(0.0, zeta - 1.0);
    double hi = zeta;
    auto f = [&](double t) { return binomial_diff(t, p) - k_star; };
    const double f_lo = f(lo);
    if (f_lo >= 0.0) return lo;
    if (f(hi) <= 0.0) return hi;

    double t = 0.5 * (lo + hi);
    const double tol = 1e-12 * k_star;
    for (int it = 0; it < 80; ++it) {
        const double ft = f(t);
        if (std::abs(ft) <= tol * 1e-3) break;
        if (ft < 0.0) {
            lo = t;
        } else {
            hi = t;
        }
        // derivative of (t+1)^p - t^p is p * ((t+1)^{p-1} - t^{p-1})
        const double dft = p * binomial_diff(t, p - 1);
        double next = t - ft / dft;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - t) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, t)) {
            t = next;
            break;
        }
        t = next;
    }
    return t;
}

} // namespace detail

/// Nonnegative root of (t+1)^{n+1} - t^{n+1} = k_star.
/// numeric: safeguarded Newton on the bracket [max(0, zeta-1), zeta];
/// exact3 / exact4: the closed-form radicals for n = 3 / n = 4;
/// asymptotic: three-term large-zeta expansion, t = eta - 1/2.
inline RootSolution solve_t(int n, double k_star, RootMethod method = RootMethod::numeric)
{
    spectral_bounds::detail::require(n >= 1, ErrorKind::invalid_argument, "root equation needs n >= 1");
    spectral_bounds::detail::require(std::isfinite(k_star), ErrorKind::invalid_argument, "k_star must be finite");
    spectral_bounds::detail::require(k_star >= 1.0, ErrorKind::out_of_range,
                                     "k_star < 1 gives a negative root");
    switch (method) {
    case RootMethod::numeric:
        return detail::finish(n, k_star, detail::solve_numeric(n, k_star), method);
    case RootMethod::exact3: {
        spectral_bounds::detail::require(n == 3, ErrorKind::invalid_argument, "exact3 requires n = 3");
        const double rho = std::cbrt(k_star + std::sqrt(k_star * k_star + 1.0 / 27.0));
        const double varrho = 1.0 / (3.0 * rho); // rho * varrho = 1/3
        const double t = 0.5 * (rho - varrho) - 0.5;
        return detail::finish(n, k_star, std::max(0.0, t), method);
    }
    case RootMethod::exact4: {
        spectral_bounds::detail::require(n == 4, ErrorKind::invalid_argument, "exact4 requires n = 4");
        const double theta = std::sqrt(std::sqrt(20.0 * k_star + 5.0) / 10.0 - 0.25);
        return detail::finish(n, k_star, std::max(0.0, theta - 0.5), method);
    }
    case RootMethod::asymptotic: {
        const double zeta = zeta_of(n, k_star);
        const double corr = eta_correction(n, k_star, 3);
        RootSolution r;
        r.n = n;
        r.k_star = k_star;
        r.t = zeta + corr - 0.5;
        r.method = method;
        r.residual = r.t >= 0.0 ? binomial_diff(r.t, n + 1) - k_star : std::numeric_limits<double>::quiet_NaN();
        r.eta_offset = corr;
        return r;
    }
    }
    throw Error(ErrorKind::invalid_argument, "unknown root method");
}

/// Trapezoid Psi_s: plateau M on [0, s], slope -L down to zero at s + M/L.
struct ExtremalProfile {
    int n = 2;
    double M = 1.0;
    double L = 1.0;
    double s = 0.0;
    double t = 0.0;       ///< L s / M
    double m_star = 0.0;  ///< prescribed (n-1)-moment, k / (n omega_n)
    double k = 1.0;
    double k_star = 1.0;
    RootSolution root;

    double operator()(double r) const
    {
        if (r <= s) return M;
        return std::max(0.0, M - L * (r - s));
    }

    double support_end() const { return s + M / L; }
};

/// Profile with caps M = (2pi)^{-n} V and L = 2 (2pi)^{-n} sqrt(V I) whose
/// (n-1)-moment is k / (n omega_n).
inline ExtremalProfile profile_for(int n, double volume, double inertia, double k)
{
    spectral_bounds::detail::require(n >= 2, ErrorKind::invalid_argument, "profile needs n >= 2");
    spectral_bounds::detail::require(volume > 0.0 && std::isfinite(volume), ErrorKind::invalid_argument,
                                     "profile needs finite V > 0");
    spectral_bounds::detail::require(inertia > 0.0 && std::isfinite(inertia), ErrorKind::invalid_argument,
                                     "profile needs finite I > 0");
    spectral_bounds::detail::require(k >= 1.0, ErrorKind::invalid_argument, "profile needs k >= 1");
    const double two_pi = 2.0 * std::numbers::pi;
    const double omega = geometry::unit_ball_volume(n);

    ExtremalProfile p;
    p.n = n;
    p.k = k;
    p.M = std::pow(two_pi, -n) * volume;
    p.L = 2.0 * std::pow(two_pi, -n) * std::sqrt(volume * inertia);
    p.m_star = k / (n * omega);
    // k (n+1) L^n / (omega M^{n+1}) with the (2pi) powers cancelled analytically
    p.k_star = k * (n + 1) * std::pow(4.0 * std::numbers::pi, n) * std::pow(inertia / volume, 0.5 * n) /
               (omega * volume);
    p.root = solve_t(n, p.k_star);
    p.t = p.root.t;
    p.s = p.t * p.M / p.L;
    return p;
}

/// Profile with arbitrary caps whose b-moment equals m_star.
inline ExtremalProfile profile_with_moment(double M, double L, int b, double m_star)
{
    spectral_bounds::detail::require(M > 0.0 && L > 0.0, ErrorKind::invalid_argument, "caps must be positive");
    spectral_bounds::detail::require(b >= 0, ErrorKind::invalid_argument, "moment order b must be >= 0");
    const double ratio = M / L;
    // int r^b Psi_s = M (M/L)^{b+1} / ((b+1)(b+2)) * binomial_diff(t, b+2)
    const double target = m_star * (b + 1.0) * (b + 2.0) / (M * std::pow(ratio, b + 1));
    spectral_bounds::detail::require(target >= 1.0 * (1.0 - 1e-14), ErrorKind::infeasible_moment,
                                     "prescribed moment is below the s = 0 trapezoid");
    ExtremalProfile p;
    p.n = b + 1;
    p.M = M;
    p.L = L;
    p.m_star = m_star;
    p.k_star = std::max(1.0, target);
    p.root = solve_t(b + 1, p.k_star);
    p.t = p.root.t;
    p.s = p.t * ratio;
    return p;
}

/// int_0^inf r^d Psi_s(r) dr = M^{d+2} / ((d+1)(d+2) L^{d+1}) * ((t+1)^{d+2} - t^{d+2}).
inline double psi_moment(const ExtremalProfile& p, int d)
{
    spectral_bounds::detail::require(d >= 0, ErrorKind::invalid_argument, "moment order must be >= 0");
    return p.M * std::pow(p.M / p.L, d + 1) / ((d + 1.0) * (d + 2.0)) * binomial_diff(p.t, d + 2);
}

/// Certified lower bound on the mean of the first k eigenvalues of (-Delta)^l:
/// (1/k) n omega_n int r^{n+2l-1} Psi_s.
inline BoundResult rigorous_sum_bound(const ProblemSpec& spec, double k)
{
    const auto l = spec.order();
    spectral_bounds::detail::require(l.has_value(), ErrorKind::not_applicable,
                                     "rigorous_sum_bound needs a poly-Laplacian problem");
    const auto p = profile_for(spec.n, spec.volume, spec.inertia, k);
    const double omega = geometry::unit_ball_volume(spec.n);
    const double value = spec.n * omega * psi_moment(p, spec.n + 2 * *l - 1) / k;
    return BoundResult::from_terms(InequalityId::rigorous, k, {{"psi_moment", value}},
                                   "slope-constrained extremal profile bound, t = " + std::to_string(p.t));
}

/// Certified lower bound on the mean of the first k eigenvalues of Delta^2 - a Delta.
inline BoundResult rigorous_quad_bound(const ProblemSpec& spec, double k)
{
    spectral_bounds::detail::require(spec.is_quadratic(), ErrorKind::not_applicable,
                                     "rigorous_quad_bound needs a quadratic-operator problem");
    const double a = spec.quad_coefficient();
    const auto p = profile_for(spec.n, spec.volume, spec.inertia, k);
    const double c = spec.n * geometry::unit_ball_volume(spec.n) / k;
    return BoundResult::from_terms(InequalityId::rigorous_quad, k,
                                   {{"quartic_moment", c * psi_moment(p, spec.n + 3)},
                                    {"a_quadratic_moment", a * c * psi_moment(p, spec.n + 1)}},
                                   "slope-constrained extremal profile bound");
}

namespace detail {

// (B(t,q)/q - zeta^{q-1} - c2 zeta^{q-3}) / zeta^{q-3}, where B is the binomial
// difference at the root t of the profile and c2 = l(n+2l)/12. Assembled from
// eta - zeta so the O(zeta^{q-1}) parts never get subtracted.
inline double scaled_expansion_tail(const ExtremalProfile& p, int l)
{
    const int n = p.n;
    const int q = n + 2 * l + 1;
    const double zeta = zeta_of(n, p.k_star);
    const double eta = p.t + 0.5;
    const double u = eta / zeta;
    const double delta_zeta = p.root.eta_offset * zeta;
    const double lead = delta_zeta * geometric_sum(u, q - 1);
    const double c2 = l * (n + 2.0 * l) / 12.0;
    return lead + odd_tail_scaled(q, u, zeta) - c2;
}

} // namespace detail

/// Signed epsilon that turns the two-term large-k form into the rigorous bound:
/// rigorous = weyl + second * (1 - epsilon). Diagnostic only.
inline double epsilon_effective(const ProblemSpec& spec, double k)
{
    const auto l = spec.order();
    spectral_bounds::detail::require(l.has_value(), ErrorKind::not_applicable,
                                     "epsilon_effective needs a poly-Laplacian problem");
    spectral_bounds::detail::require(std::isfinite(spec.inertia), ErrorKind::not_applicable,
                                     "second-order term vanishes for infinite inertia");
    const auto p = profile_for(spec.n, spec.volume, spec.inertia, k);
    const double c2 = *l * (spec.n + 2.0 * *l) / 12.0;
    return -detail::scaled_expansion_tail(p, *l) / c2;
}

/// k * rigorous mean minus the three displayed terms of the large-k expansion
/// (leading, second order, and the C(n,l) term).
inline double expansion_remainder(const ProblemSpec& spec, double k)
{
    const auto l = spec.order();
    spectral_bounds::detail::require(l.has_value(), ErrorKind::not_applicable,
                                     "expansion_remainder needs a poly-Laplacian problem");
    const auto p = profile_for(spec.n, spec.volume, spec.inertia, k);
    const int n = spec.n;
    const int q = n + 2 * *l + 1;
    const double zeta = zeta_of(n, p.k_star);
    const double c_nl = [&] {
        const double a = n + 2.0 * *l;
        return (a - 1.0) * ((a - 2.0) * (6.0 * *l - 7.0 * n + 1.0) + 5.0 * (n - 1.0) * (n - 1.0)) +
               (n - 1.0) * (n - 3.0) * (2.0 * n + 1.0);
    }();
    const double c3 = (n + 2.0 * *l) * c_nl / 5760.0;
    const double omega = geometry::unit_ball_volume(n);
    // n omega M^q / ((q-1) L^{q-1}) zeta^{q-3}
    const double prefactor = n * omega * p.M * std::pow(p.M / p.L, q - 1) / (q - 1.0) * std::pow(zeta, q - 3);
    return prefactor * (detail::scaled_expansion_tail(p, *l) - c3 / (zeta * zeta));
}

/// tau = 432 sqrt(15) pi / 25: smallest k_star reachable in dimension 3.
inline double tau_threshold() { return 432.0 * std::sqrt(15.0) * std::numbers::pi / 25.0; }
/// sigma = 5 * 2^12 / 9: smallest k_star reachable in dimension 4.
inline double sigma_threshold() { return 5.0 * 4096.0 / 9.0; }

struct N3PolyLower {
    double exact = 0.0;       ///< (t+1)^8 - t^8 at the n = 3 root
    double with_linear = 0.0; ///< 2^{1/3}/4 k^{7/3} + 7 2^{2/3}/12 k^{5/3} - 7/24 k
    double alpha_form = 0.0;  ///< 2^{1/3}/4 k^{7/3} + 7 2^{2/3}/12 alpha_3 k^{5/3}
    // exact minus each right-hand side, evaluated without the cancellation
    double linear_slack = 0.0;
    double alpha_slack = 0.0;
};

namespace detail {

// With eta = t + 1/2 the root satisfies k = eta (1 + x) / x, x = 1/(4 eta^2), and
// (exact - with_linear) / eta = 5/12 + sum_j x^j [-C(7/3, j+3)/8 - 7/12 C(5/3, j+2)]
// once the x^{-3}..x^{-1} parts cancel. Generalized binomials by recurrence.
inline double n3_linear_slack(double eta)
{
    const double x = 1.0 / (4.0 * eta * eta);
    auto binom = [](double p, int m) {
        double c = 1.0;
        for (int i = 0; i < m; ++i) c *= (p - i) / (i + 1.0);
        return c;
    };
    double a = binom(7.0 / 3.0, 3);
    double b = binom(5.0 / 3.0, 2);
    double sum = 5.0 / 12.0;
    double xp = 1.0;
    for (int j = 0; j < 200; ++j) {
        const double term = xp * (-a / 8.0 - 7.0 / 12.0 * b);
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
        a *= (7.0 / 3.0 - (j + 3)) / (j + 4.0);
        b *= (5.0 / 3.0 - (j + 2)) / (j + 3.0);
        xp *= x;
    }
    return eta * sum;
}

} // namespace detail

inline N3PolyLower n3_poly_lower(double k_star)
{
    spectral_bounds::detail::require(k_star >= tau_threshold(), ErrorKind::below_threshold,
                                     "n = 3 polynomial bounds need k_star >= tau ~ 210.25");
    const double c1 = std::cbrt(2.0) / 4.0;
    const double c2 = 7.0 * std::cbrt(4.0) / 12.0;
    const double t = solve_t(3, k_star).t;
    N3PolyLower r;
    r.exact = binomial_diff(t, 8);
    r.with_linear = c1 * std::pow(k_star, 7.0 / 3.0) + c2 * std::pow(k_star, 5.0 / 3.0) - 7.0 / 24.0 * k_star;
    r.alpha_form = c1 * std::pow(k_star, 7.0 / 3.0) + c2 * constants::alpha3 * std::pow(k_star, 5.0 / 3.0);
    r.linear_slack = detail::n3_linear_slack(t + 0.5);
    r.alpha_slack = r.linear_slack + c2 * (1.0 - constants::alpha3) * std::pow(k_star, 5.0 / 3.0) - 7.0 / 24.0 * k_star;
    return r;
}

/// (t+1)^9 - t^9 at the n = 4 root in closed algebraic form; valid for k_star >= 1.
inline double n4_closed_form(double k_star)
{
    spectral_bounds::detail::require(k_star >= 1.0, ErrorKind::out_of_range, "closed form needs k_star >= 1");
    const double w = std::sqrt(20.0 * k_star + 5.0);
    return 9.0 / 25.0 * k_star * k_star + 6.0 / 25.0 * k_star * w - 18.0 / 25.0 * k_star + 3.0 / 50.0 * w -
           7.0 / 50.0;
}

struct N4PolyLower {
    double exact = 0.0;       ///< (t+1)^9 - t^9 at the n = 4 root
    double closed = 0.0;      ///< algebraic identity for the same quantity
    double with_linear = 0.0; ///< 9/25 k^2 + 12 sqrt5/25 k^{3/2} - 18/25 k
    double alpha_form = 0.0;  ///< 9/25 k^2 + 12 sqrt5/25 alpha_4 k^{3/2}
    double linear_slack = 0.0;
    double alpha_slack = 0.0;
};

inline N4PolyLower n4_poly_lower(double k_star)
{
    spectral_bounds::detail::require(k_star >= sigma_threshold(), ErrorKind::below_threshold,
                                     "n = 4 polynomial bounds need k_star >= sigma ~ 2275.56");
    const double c = 12.0 * std::sqrt(5.0) / 25.0;
    N4PolyLower r;
    r.exact = binomial_diff(solve_t(4, k_star).t, 9);
    r.closed = n4_closed_form(k_star);
    r.with_linear = 9.0 / 25.0 * k_star * k_star + c * std::pow(k_star, 1.5) - 18.0 / 25.0 * k_star;
    r.alpha_form = 9.0 / 25.0 * k_star * k_star + c * constants::alpha4 * std::pow(k_star, 1.5);
    // closed form minus with_linear: 6/25 k (w - sqrt(20 k)) + 3/50 w - 7/50, w = sqrt(20 k + 5)
    const double w = std::sqrt(20.0 * k_star + 5.0);
    r.linear_slack = 6.0 / 25.0 * k_star * 5.0 / (w + std::sqrt(20.0 * k_star)) + 3.0 / 50.0 * w - 7.0 / 50.0;
    r.alpha_slack = r.linear_slack + c * (1.0 - constants::alpha4) * std::pow(k_star, 1.5) - 18.0 / 25.0 * k_star;
    return r;
}

/// Decreasing piecewise-linear profile F with 0 <= F <= M and slopes in [-L, 0].
struct FeasibleProfile {
    std::vector<double> radii;  ///< knots, radii.front() == 0, F(radii.back()) == 0
    std::vector<double> values;
    double M = 1.0;
    double L = 1.0;
    double b_moment = 0.0;

    /// int_0^inf r^d F(r) dr, exact per linear piece.
    double moment(int d) const
    {
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
            const double r0 = radii[i];
            const double r1 = radii[i + 1];
            if (r1 <= r0) continue;
            const double slope = (values[i + 1] - values[i]) / (r1 - r0);
            const double intercept = values[i] - slope * r0;
            total += intercept * (std::pow(r1, d + 1) - std::pow(r0, d + 1)) / (d + 1.0) +
                     slope * (std::pow(r1, d + 2) - std::pow(r0, d + 2)) / (d + 2.0);
        }
        return total;
    }

    double max_abs_slope() const
    {
        double m = 0.0;
        for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
            const double dr = radii[i + 1] - radii[i];
            if (dr > 0.0) m = std::max(m, (values[i] - values[i + 1]) / dr);
        }
        return m;
    }

    bool feasible(double rel_tol = 1e-12) const
    {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] < 0.0 || values[i] > M * (1.0 + rel_tol)) return false;
            if (i > 0 && (values[i] > values[i - 1] || radii[i] < radii[i - 1])) return false;
        }
        return max_abs_slope() <= L * (1.0 + rel_tol) && values.back() == 0.0;
    }

    /// Same profile as a function of r / c: moments of order d scale by c^{d+1}.
    FeasibleProfile rescaled(double c) const
    {
        FeasibleProfile out = *this;
        for (auto& r : out.radii) r *= c;
        return out;
    }

    static FeasibleProfile from_extremal(const ExtremalProfile& p)
    {
        FeasibleProfile f;
        f.M = p.M;
        f.L = p.L;
        f.radii = {0.0};
        f.values = {p.M};
        if (p.s > 0.0) {
            f.radii.push_back(p.s);
            f.values.push_back(p.M);
        }
        f.radii.push_back(p.support_end());
        f.values.push_back(0.0);
        return f;
    }
};

/// Random decreasing profile: 2..20 knots, slopes uniform in [-L, 0], clipped at M and 0.
template <class Rng>
FeasibleProfile random_feasible_profile(double M, double L, Rng& rng)
{
    std::uniform_int_distribution<int> knot_count(2, 20);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    FeasibleProfile f;
    f.M = M;
    f.L = L;
    const double scale = M / L;
    const int knots = knot_count(rng);
    double r = 0.0;
    double v = unit(rng) < 0.5 ? M : M * (1.0 - unit(rng));
    f.radii.push_back(r);
    f.values.push_back(v);
    for (int i = 1; i < knots && v > 0.0; ++i) {
        const double len = 3.0 * scale * unit(rng) + 1e-6 * scale;
        const double slope = -L * unit(rng);
        double next = v + slope * len;
        double step = len;
        if (next <= 0.0) {
            step = v / -slope;
            next = 0.0;
        }
        r += step;
        v = std::clamp(next, 0.0, M);
        f.radii.push_back(r);
        f.values.push_back(v);
    }
    if (v > 0.0) {
        const double slope = -L * (0.05 + 0.95 * unit(rng));
        r += v / -slope;
        f.radii.push_back(r);
        f.values.push_back(0.0);
    }
    return f;
}

struct MinimalityReport {
    std::size_t trials = 0;
    std::size_t rejected = 0;
    std::size_t violations = 0;
    double psi_d_moment = 0.0;
    double min_slack = std::numeric_limits<double>::infinity();      ///< min of F_d - Psi_d
    double min_rel_slack = std::numeric_limits<double>::infinity();  ///< min of (F_d - Psi_d) / Psi_d
};

/// Checks int r^d F >= int r^d Psi_s on random feasible profiles F that share
/// the caps (M, L) and the b-moment m_star with Psi_s.
inline MinimalityReport lemma1_minimality(double M, double L, int b, int d, double m_star, std::size_t trial_count,
                                      std::uint64_t seed)
{
    spectral_bounds::detail::require(d >= b && b >= 0, ErrorKind::invalid_argument, "need d >= b >= 0");
    const auto psi = profile_with_moment(M, L, b, m_star);
    MinimalityReport report;
    report.psi_d_moment = psi_moment(psi, d);

    std::mt19937_64 rng(seed);
    const std::size_t max_attempts = 1000 * std::max<std::size_t>(trial_count, 1);
    std::size_t attempts = 0;
    while (report.trials < trial_count) {
        spectral_bounds::detail::require(++attempts <= max_attempts, ErrorKind::numerical_breakdown,
                                         "random profile generation keeps breaking the slope cap");
        auto f = random_feasible_profile(M, L, rng);
        const double m = f.moment(b);
        if (!(m > 0.0)) {
            ++report.rejected;
            continue;
        }
        const double c = std::pow(m_star / m, 1.0 / (b + 1.0));
        auto g = f.rescaled(c);
        if (!g.feasible()) {
            ++report.rejected;
            continue;
        }
        g.b_moment = g.moment(b);
        const double fd = g.moment(d);
        const double slack = fd - report.psi_d_moment;
        report.min_slack = std::min(report.min_slack, slack);
        report.min_rel_slack = std::min(report.min_rel_slack, slack / report.psi_d_moment);
        if (fd < report.psi_d_moment * (1.0 - 1e-12) - 1e-9) ++report.violations;
        ++report.trials;
    }
    return report;
}

} // namespace spectral_bounds::extremal
