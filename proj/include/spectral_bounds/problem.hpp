#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spectral_bounds/error.hpp"
#include "spectral_bounds/geometry.hpp"

namespace spectral_bounds {

/// (-Delta)^l with l-fold Dirichlet data.
struct PolyLaplacian {
    int order = 1;
};

/// Delta^2 - a Delta with clamped data, a >= 0.
struct Quadratic {
    double a = 0.0;
};

using Operator = std::variant<PolyLaplacian, Quadratic>;

/// Dimension, operator and the two geometric invariants every bound consumes.
struct ProblemSpec {
    int n = 2;
    Operator op = PolyLaplacian{1};
    double volume = 1.0;
    double inertia = 1.0;

    static ProblemSpec poly(int n, int l, double volume, double inertia)
    {
        ProblemSpec s{n, PolyLaplacian{l}, volume, inertia};
        s.validate();
        return s;
    }

    static ProblemSpec quadratic(int n, double a, double volume, double inertia)
    {
        ProblemSpec s{n, Quadratic{a}, volume, inertia};
        s.validate();
        return s;
    }

    static ProblemSpec poly(const geometry::Domain& d, int l)
    {
        const auto inv = geometry::invariants(d);
        return poly(d.dimension(), l, inv.volume, inv.inertia);
    }

    static ProblemSpec quadratic(const geometry::Domain& d, double a)
    {
        const auto inv = geometry::invariants(d);
        return quadratic(d.dimension(), a, inv.volume, inv.inertia);
    }

    void validate() const
    {
        detail::require(n >= 2, ErrorKind::invalid_argument, "dimension must be >= 2");
        detail::require(volume > 0.0 && std::isfinite(volume), ErrorKind::invalid_argument, "volume must be positive");
        // inertia may be +inf to express the I -> infinity limit
        detail::require(inertia > 0.0, ErrorKind::invalid_argument, "inertia must be positive");
        if (const auto* p = std::get_if<PolyLaplacian>(&op)) {
            detail::require(p->order >= 1, ErrorKind::invalid_argument, "poly-Laplacian order must be >= 1");
        } else {
            const double a = std::get<Quadratic>(op).a;
            detail::require(a >= 0.0 && std::isfinite(a), ErrorKind::invalid_argument,
                            "quadratic coefficient a must be >= 0");
        }
    }

    bool is_quadratic() const { return std::holds_alternative<Quadratic>(op); }
    std::optional<int> order() const
    {
        if (const auto* p = std::get_if<PolyLaplacian>(&op)) return p->order;
        return std::nullopt;
    }
    double quad_coefficient() const
    {
        if (const auto* q = std::get_if<Quadratic>(&op)) return q->a;
        return 0.0;
    }
    double ball_volume() const { return geometry::unit_ball_volume(n); }
    double volume_over_inertia() const { return volume / inertia; }
};

enum class InequalityId {
    polya,
    li_yau,
    melas,
    ilyin_l1,
    levine_protter_l2,
    ilyin_n2_l2,
    cheng_wei,
    levine_protter_general,
    cheng_qi_wei,
    thm1,
    levine_protter_quad,
    thm2,
    thm3,
    thm4,
    rigorous,
    rigorous_quad,
};

inline constexpr std::array<InequalityId, 16> all_inequalities{
    InequalityId::polya,        InequalityId::li_yau,
    InequalityId::melas,        InequalityId::ilyin_l1,
    InequalityId::levine_protter_l2, InequalityId::ilyin_n2_l2,
    InequalityId::cheng_wei,    InequalityId::levine_protter_general,
    InequalityId::cheng_qi_wei, InequalityId::thm1,
    InequalityId::levine_protter_quad, InequalityId::thm2,
    InequalityId::thm3,         InequalityId::thm4,
    InequalityId::rigorous,     InequalityId::rigorous_quad,
};

inline std::string_view to_string(InequalityId id)
{
    switch (id) {
    case InequalityId::polya: return "polya";
    case InequalityId::li_yau: return "li_yau";
    case InequalityId::melas: return "melas";
    case InequalityId::ilyin_l1: return "ilyin_l1";
    case InequalityId::levine_protter_l2: return "levine_protter_l2";
    case InequalityId::ilyin_n2_l2: return "ilyin_n2_l2";
    case InequalityId::cheng_wei: return "cheng_wei";
    case InequalityId::levine_protter_general: return "levine_protter_general";
    case InequalityId::cheng_qi_wei: return "cheng_qi_wei";
    case InequalityId::thm1: return "thm1";
    case InequalityId::levine_protter_quad: return "levine_protter_quad";
    case InequalityId::thm2: return "thm2";
    case InequalityId::thm3: return "thm3";
    case InequalityId::thm4: return "thm4";
    case InequalityId::rigorous: return "rigorous";
    case InequalityId::rigorous_quad: return "rigorous_quad";
    }
    return "unknown";
}

inline std::optional<InequalityId> inequality_from_string(std::string_view name)
{
    for (auto id : all_inequalities) {
        if (to_string(id) == name) return id;
    }
    return std::nullopt;
}

struct Term {
    std::string name;
    double value = 0.0;
};

/// One inequality evaluated at one k, as a lower bound on (1/k) sum_{j<=k} lambda_j.
struct BoundResult {
    InequalityId id = InequalityId::li_yau;
    double k = 1.0;
    double value = 0.0;
    std::vector<Term> terms;
    std::string note;
    bool certified = true; ///< false for asymptotic displays (epsilon taken as 0)

    static BoundResult from_terms(InequalityId id, double k, std::vector<Term> terms, std::string note = {},
                                  bool certified = true)
    {
        BoundResult r{id, k, 0.0, std::move(terms), std::move(note), certified};
        // summed in order so that value == sum of terms exactly as listed
        for (const auto& t : r.terms) r.value += t.value;
        return r;
    }
};

/// Constants of the explicit low-dimensional inequalities. Rationals kept as
/// quotients, printed decimals kept verbatim.
namespace constants {

inline constexpr double beta2 = 119.0 / 120.0;
inline constexpr double beta3 = 0.986;
inline constexpr double beta4 = 0.983;
inline constexpr double alpha2 = 12095.0 / 12096.0;
inline constexpr double alpha3 = 0.991;
inline constexpr double alpha4 = 0.985;

inline double beta(int n)
{
    switch (n) {
    case 2: return beta2;
    case 3: return beta3;
    case 4: return beta4;
    default:
        throw Error(ErrorKind::not_applicable, "beta_n is only known for n = 2, 3, 4 (got n = " +
                                                   std::to_string(n) + ")");
    }
}

inline double alpha(int n)
{
    switch (n) {
    case 2: return alpha2;
    case 3: return alpha3;
    case 4: return alpha4;
    default:
        throw Error(ErrorKind::not_applicable, "alpha_n is only known for n = 2, 3, 4 (got n = " +
                                                   std::to_string(n) + ")");
    }
}

} // namespace constants

/// (2 pi)^{2q} / (omega_n V)^{2q/n} * k^{2q/n}; the building block of every
/// Weyl-type term. q may be zero or negative.
inline double weyl_power(int n, double volume, int q, double k)
{
    const double base = 2.0 * std::numbers::pi;
    const double wv = geometry::unit_ball_volume(n) * volume;
    const double e = 2.0 * q / n;
    return std::pow(base, 2.0 * q) * std::pow(k / wv, e);
}

} // namespace spectral_bounds
