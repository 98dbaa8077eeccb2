#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "spectral_bounds/error.hpp"
#include "spectral_bounds/extremal.hpp"
#include "spectral_bounds/problem.hpp"

// Closed-form lower bounds on (1/k) sum_{j<=k} lambda_j for the Dirichlet
// poly-Laplacian (-Delta)^l and for Delta^2 - a Delta. Every function returns
// the bound in mean form together with its additive terms.
namespace spectral_bounds::bounds {

enum class EpsilonMode {
    zero,      ///< epsilon_n(k) := 0, asymptotic display only
    rigorous,  ///< value replaced by the extremal-profile bound, effective epsilon reported
};

namespace detail {

using spectral_bounds::detail::require;

inline int require_order(const ProblemSpec& spec, const char* who)
{
    const auto l = spec.order();
    spectral_bounds::detail::require(l.has_value(), ErrorKind::not_applicable,
                                     std::string(who) + " applies to the poly-Laplacian problem only");
    return *l;
}

inline void require_order_is(const ProblemSpec& spec, int l, const char* who)
{
    const int have = require_order(spec, who);
    spectral_bounds::detail::require(have == l, ErrorKind::not_applicable,
                                     std::string(who) + " holds for l = " + std::to_string(l) + " only (got l = " +
                                         std::to_string(have) + ")");
}

inline void require_quadratic(const ProblemSpec& spec, const char* who)
{
    spectral_bounds::detail::require(spec.is_quadratic(), ErrorKind::not_applicable,
                                     std::string(who) + " applies to the operator Delta^2 - a Delta only");
}

inline void require_k(double k)
{
    spectral_bounds::detail::require(k >= 1.0 && std::isfinite(k), ErrorKind::invalid_argument, "k must be >= 1");
}

inline void require_dimension_in(const ProblemSpec& spec, int lo, int hi, const char* who)
{
    spectral_bounds::detail::require(spec.n >= lo && spec.n <= hi, ErrorKind::not_applicable,
                                     std::string(who) + " is proved for n = " + std::to_string(lo) + ".." +
                                         std::to_string(hi) + " only (got n = " + std::to_string(spec.n) + ")");
}

inline double weyl(const ProblemSpec& spec, int q, double k) { return weyl_power(spec.n, spec.volume, q, k); }

} // namespace detail

/// n/(n+2l) (2pi)^{2l} / (omega_n V)^{2l/n} k^{2l/n}.
inline double weyl_leading(const ProblemSpec& spec, int l, double k)
{
    detail::require_k(k);
    return spec.n / (spec.n + 2.0 * l) * detail::weyl(spec, l, k);
}

inline BoundResult polya(const ProblemSpec& spec, double k)
{
    detail::require_order_is(spec, 1, "polya");
    detail::require_k(k);
    return BoundResult::from_terms(InequalityId::polya, k, {{"weyl", detail::weyl(spec, 1, k)}},
                                   "bound on lambda_k proved for tiling domains only; display", false);
}

inline BoundResult li_yau(const ProblemSpec& spec, double k)
{
    detail::require_order_is(spec, 1, "li_yau");
    return BoundResult::from_terms(InequalityId::li_yau, k, {{"weyl", weyl_leading(spec, 1, k)}});
}

inline BoundResult melas(const ProblemSpec& spec, double k)
{
    detail::require_order_is(spec, 1, "melas");
    return BoundResult::from_terms(InequalityId::melas, k,
                                   {{"weyl", weyl_leading(spec, 1, k)},
                                    {"inertia", spec.volume_over_inertia() / (24.0 * (spec.n + 2))}});
}

inline BoundResult ilyin_l1(const ProblemSpec& spec, double k)
{
    detail::require_order_is(spec, 1, "ilyin_l1");
    detail::require_dimension_in(spec, 2, 4, "ilyin_l1");
    return BoundResult::from_terms(
        InequalityId::ilyin_l1, k,
        {{"weyl", weyl_leading(spec, 1, k)},
         {"inertia", spec.n / 48.0 * constants::beta(spec.n) * spec.volume_over_inertia()}});
}

/// Leading-term bound for any l (l = 2 reported as levine_protter_l2).
inline BoundResult levine_protter(const ProblemSpec& spec, double k)
{
    const int l = detail::require_order(spec, "levine_protter");
    const auto id = l == 2 ? InequalityId::levine_protter_l2 : InequalityId::levine_protter_general;
    return BoundResult::from_terms(id, k, {{"weyl", weyl_leading(spec, l, k)}});
}

inline BoundResult ilyin_n2_l2(const ProblemSpec& spec, double k)
{
    detail::require_order_is(spec, 2, "ilyin_n2_l2");
    detail::require_dimension_in(spec, 2, 2, "ilyin_n2_l2");
    detail::require_k(k);
    const double pi = std::numbers::pi;
    return BoundResult::from_terms(
        InequalityId::ilyin_n2_l2, k,
        {{"weyl", 16.0 * pi * pi / (3.0 * spec.volume * spec.volume) * k * k},
         {"inertia", 12095.0 * pi / (3.0 * 12096.0 * spec.inertia) * k}});
}

inline BoundResult cheng_wei(const ProblemSpec& spec, double k)
{
    detail::require_order_is(spec, 2, "cheng_wei");
    const double n = spec.n;
    const double vi = spec.volume_over_inertia();
    const double bracket1 = (n + 2.0) / (12.0 * n * (n + 4.0)) - 1.0 / (1152.0 * n * n * (n + 4.0));
    const double bracket2 = 1.0 / (576.0 * n * (n + 4.0)) - 1.0 / (27648.0 * n * n * (n + 2.0) * (n + 4.0));
    return BoundResult::from_terms(InequalityId::cheng_wei, k,
                                   {{"weyl", weyl_leading(spec, 2, k)},
                                    {"inertia", n / (n + 2.0) * bracket1 * detail::weyl(spec, 1, k) * vi},
                                    {"inertia_squared", bracket2 * vi * vi}});
}

/// Coefficient of the p-th correction term, without the Weyl and (V/I)^p factors.
inline double cheng_qi_wei_coefficient(int n, int l, int p)
{
    double falling = 1.0; // n (n+2) ... (n+2p-2)
    for (int i = 0; i < p; ++i) falling *= n + 2.0 * i;
    return n / (n + 2.0 * l) * (l + 1.0 - p) / (std::pow(24.0, p) * falling);
}

inline BoundResult cheng_qi_wei(const ProblemSpec& spec, double k)
{
    const int l = detail::require_order(spec, "cheng_qi_wei");
    std::vector<Term> terms{{"weyl", weyl_leading(spec, l, k)}};
    const double vi = spec.volume_over_inertia();
    for (int p = 1; p <= l; ++p) {
        terms.push_back({"inertia_p" + std::to_string(p),
                         cheng_qi_wei_coefficient(spec.n, l, p) * detail::weyl(spec, l - p, k) * std::pow(vi, p)});
    }
    return BoundResult::from_terms(InequalityId::cheng_qi_wei, k, std::move(terms));
}

/// Coefficient n l / 48 of the second-order term of the large-k form.
inline double thm1_second_coefficient(int n, int l) { return n * l / 48.0; }

/// Second-order term of the large-k form with epsilon = 0.
inline double thm1_second_term(const ProblemSpec& spec, int l, double k)
{
    return thm1_second_coefficient(spec.n, l) * detail::weyl(spec, l - 1, k) * spec.volume_over_inertia();
}

inline BoundResult thm1(const ProblemSpec& spec, double k, EpsilonMode mode)
{
    const int l = detail::require_order(spec, "thm1");
    const double lead = weyl_leading(spec, l, k);
    const double second = thm1_second_term(spec, l, k);
    if (mode == EpsilonMode::zero) {
        return BoundResult::from_terms(InequalityId::thm1, k, {{"weyl", lead}, {"second_order", second}},
                                       "asymptotic, not a certified bound for small k (epsilon = 0)", false);
    }
    const double rigorous = extremal::rigorous_sum_bound(spec, k).value;
    const double eps = extremal::epsilon_effective(spec, k);
    auto r = BoundResult::from_terms(InequalityId::thm1, k, {{"weyl", lead}, {"second_order", rigorous - lead}},
                                     "certified via extremal profile; effective epsilon = " + std::to_string(eps) +
                                         (eps < 0.0 ? " (negative)" : ""));
    r.value = rigorous;
    return r;
}

inline BoundResult levine_protter_quad(const ProblemSpec& spec, double k)
{
    detail::require_quadratic(spec, "levine_protter_quad");
    const double n = spec.n;
    const double a = spec.quad_coefficient();
    return BoundResult::from_terms(InequalityId::levine_protter_quad, k,
                                   {{"weyl", weyl_leading(spec, 2, k)},
                                    {"a_weyl", n * a / (n + 2.0) * detail::weyl(spec, 1, k)}});
}

inline BoundResult thm2(const ProblemSpec& spec, double k, EpsilonMode mode)
{
    detail::require_quadratic(spec, "thm2");
    const double n = spec.n;
    const double a = spec.quad_coefficient();
    const double vi = spec.volume_over_inertia();
    const double t1 = weyl_leading(spec, 2, k);
    const double t2 = (n / 24.0 * vi + n * a / (n + 2.0)) * detail::weyl(spec, 1, k);
    const double t3 = (-n * (n * n - 4.0) / 3840.0 * vi + n * a / 48.0) * vi;
    if (mode == EpsilonMode::zero) {
        return BoundResult::from_terms(InequalityId::thm2, k, {{"weyl", t1}, {"second_order", t2}, {"constant", t3}},
                                       "asymptotic, not a certified bound for small k (epsilon = 0)", false);
    }
    const double rigorous = extremal::rigorous_quad_bound(spec, k).value;
    const double effective = rigorous - t1 - t2;
    std::string note = "certified via extremal profile";
    if (t3 != 0.0) note += "; effective epsilon = " + std::to_string(1.0 - effective / t3);
    auto r = BoundResult::from_terms(InequalityId::thm2, k,
                                     {{"weyl", t1}, {"second_order", t2}, {"constant", effective}}, note);
    r.value = rigorous;
    return r;
}

inline BoundResult thm3(const ProblemSpec& spec, double k)
{
    detail::require_quadratic(spec, "thm3");
    detail::require_dimension_in(spec, 2, 4, "thm3");
    const double n = spec.n;
    const double a = spec.quad_coefficient();
    const double vi = spec.volume_over_inertia();
    return BoundResult::from_terms(
        InequalityId::thm3, k,
        {{"weyl", weyl_leading(spec, 2, k)},
         {"second_order", (n / 24.0 * constants::alpha(spec.n) * vi + n * a / (n + 2.0)) * detail::weyl(spec, 1, k)},
         {"constant", n * a / 48.0 * constants::beta(spec.n) * vi}});
}

inline BoundResult thm4(const ProblemSpec& spec, double k)
{
    detail::require_quadratic(spec, "thm4");
    detail::require_dimension_in(spec, 3, 4, "thm4");
    const double n = spec.n;
    const double a = spec.quad_coefficient();
    const double vi = spec.volume_over_inertia();
    const double constant = (-n * (n * n - 4.0) / 3840.0 * vi + n * a / 48.0 * constants::beta(spec.n)) * vi;
    return BoundResult::from_terms(InequalityId::thm4, k,
                                   {{"weyl", weyl_leading(spec, 2, k)},
                                    {"second_order", (n / 24.0 * vi + n * a / (n + 2.0)) * detail::weyl(spec, 1, k)},
                                    {"constant", constant}},
                                   constant < 0.0 ? "constant term negative" : "");
}

/// C(n,l) = (n+2l-1)[(n+2l-2)(6l-7n+1) + 5(n-1)^2] + (n-1)(n-3)(2n+1).
inline double expansion_coefficient(int n, int l)
{
    spectral_bounds::detail::require(n >= 2 && l >= 1, ErrorKind::invalid_argument, "C(n,l) needs n >= 2, l >= 1");
    const double a = n + 2.0 * l;
    return (a - 1.0) * ((a - 2.0) * (6.0 * l - 7.0 * n + 1.0) + 5.0 * (n - 1.0) * (n - 1.0)) +
           (n - 1.0) * (n - 3.0) * (2.0 * n + 1.0);
}

/// n(n+2l)/2: how much larger the second-order coefficient of the large-k form
/// is than the first correction of cheng_qi_wei.
inline double remark1_ratio(int n, int l)
{
    spectral_bounds::detail::require(n >= 2 && l >= 1, ErrorKind::invalid_argument, "ratio needs n >= 2, l >= 1");
    const double ratio = n * (n + 2.0 * l) / 2.0;
    const double measured = thm1_second_coefficient(n, l) / cheng_qi_wei_coefficient(n, l, 1);
    spectral_bounds::detail::require(std::abs(measured - ratio) <= 1e-12 * ratio, ErrorKind::numerical_breakdown,
                                     "coefficient ratio disagrees with n(n+2l)/2");
    return ratio;
}

/// Dispatch by id. Throws not-applicable when the inequality does not cover spec.
inline BoundResult evaluate(InequalityId id, const ProblemSpec& spec, double k,
                            EpsilonMode mode = EpsilonMode::zero)
{
    switch (id) {
    case InequalityId::polya: return polya(spec, k);
    case InequalityId::li_yau: return li_yau(spec, k);
    case InequalityId::melas: return melas(spec, k);
    case InequalityId::ilyin_l1: return ilyin_l1(spec, k);
    case InequalityId::levine_protter_l2:
        detail::require_order_is(spec, 2, "levine_protter_l2");
        return levine_protter(spec, k);
    case InequalityId::ilyin_n2_l2: return ilyin_n2_l2(spec, k);
    case InequalityId::cheng_wei: return cheng_wei(spec, k);
    case InequalityId::levine_protter_general: {
        auto r = levine_protter(spec, k);
        r.id = InequalityId::levine_protter_general;
        return r;
    }
    case InequalityId::cheng_qi_wei: return cheng_qi_wei(spec, k);
    case InequalityId::thm1: return thm1(spec, k, mode);
    case InequalityId::levine_protter_quad: return levine_protter_quad(spec, k);
    case InequalityId::thm2: return thm2(spec, k, mode);
    case InequalityId::thm3: return thm3(spec, k);
    case InequalityId::thm4: return thm4(spec, k);
    case InequalityId::rigorous: return extremal::rigorous_sum_bound(spec, k);
    case InequalityId::rigorous_quad: return extremal::rigorous_quad_bound(spec, k);
    }
    throw Error(ErrorKind::invalid_argument, "unknown inequality");
}

/// Inequalities that cover spec (certified ones only unless include_asymptotic).
inline std::vector<InequalityId> applicable(const ProblemSpec& spec, bool include_asymptotic = false)
{
    std::vector<InequalityId> out;
    for (auto id : all_inequalities) {
        try {
            const auto r = evaluate(id, spec, 1.0);
            if (r.certified || include_asymptotic) out.push_back(id);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::not_applicable) throw;
        }
    }
    return out;
}

} // namespace spectral_bounds::bounds
