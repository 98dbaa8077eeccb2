#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "spectral_bounds/error.hpp"

namespace spectral_bounds::geometry {

using Point2 = std::array<double, 2>;

/// Volume of the unit ball in R^n, pi^{n/2} / Gamma(n/2 + 1).
inline double unit_ball_volume(int n)
{
    detail::require(n >= 1, ErrorKind::invalid_argument,
                    "unit ball volume needs n >= 1, got " + std::to_string(n));
    const double half = 0.5 * n;
    return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

struct Box {
    std::vector<double> sides;
};

struct Ball {
    int dim = 2;
    double radius = 1.0;
};

/// Simple planar polygon, stored counterclockwise.
struct Polygon {
    std::vector<Point2> vertices;
};

namespace detail {

using spectral_bounds::detail::require;

inline double cross(const Point2& o, const Point2& a, const Point2& b)
{
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

inline bool on_segment(const Point2& p, const Point2& a, const Point2& b)
{
    return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) &&
           std::min(a[1], b[1]) <= p[1] && p[1] <= std::max(a[1], b[1]);
}

inline int orientation_sign(double v)
{
    return (v > 0.0) - (v < 0.0);
}

inline bool segments_intersect(const Point2& p1, const Point2& p2, const Point2& q1, const Point2& q2)
{
    const int d1 = orientation_sign(cross(q1, q2, p1));
    const int d2 = orientation_sign(cross(q1, q2, p2));
    const int d3 = orientation_sign(cross(p1, p2, q1));
    const int d4 = orientation_sign(cross(p1, p2, q2));
    if (d1 * d2 < 0 && d3 * d4 < 0) {
        return true;
    }
    return (d1 == 0 && on_segment(p1, q1, q2)) || (d2 == 0 && on_segment(p2, q1, q2)) ||
           (d3 == 0 && on_segment(q1, p1, p2)) || (d4 == 0 && on_segment(q2, p1, p2));
}

inline double signed_area(std::span<const Point2> v)
{
    double twice = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& a = v[i];
        const auto& b = v[(i + 1) % v.size()];
        twice += a[0] * b[1] - b[0] * a[1];
    }
    return 0.5 * twice;
}

// O(m^2) pairwise test of non-adjacent edges; polygons here are small.
inline bool is_simple(std::span<const Point2> v)
{
    const std::size_t m = v.size();
    for (std::size_t i = 0; i < m; ++i) {
        const auto& a1 = v[i];
        const auto& a2 = v[(i + 1) % m];
        if (a1 == a2) {
            return false;
        }
        for (std::size_t j = i + 1; j < m; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == m - 1);
            if (adjacent) {
                continue;
            }
            if (segments_intersect(a1, a2, v[j], v[(j + 1) % m])) {
                return false;
            }
        }
    }
    return true;
}

} // namespace detail

/// Validated domain description: a box, a ball or a simple planar polygon.
class Domain {
public:
    using Shape = std::variant<Box, Ball, Polygon>;

    static Domain box(std::vector<double> sides)
    {
        spectral_bounds::detail::require(sides.size() >= 2, ErrorKind::invalid_argument,
                                         "box needs at least 2 side lengths");
        for (double s : sides) {
            spectral_bounds::detail::require(std::isfinite(s) && s > 0.0, ErrorKind::invalid_argument,
                                             "box side lengths must be positive");
        }
        return Domain(Box{std::move(sides)});
    }

    static Domain ball(int dim, double radius)
    {
        spectral_bounds::detail::require(dim >= 2, ErrorKind::invalid_argument, "ball dimension must be >= 2");
        spectral_bounds::detail::require(std::isfinite(radius) && radius > 0.0, ErrorKind::invalid_argument,
                                         "ball radius must be positive");
        return Domain(Ball{dim, radius});
    }

    // Clockwise input is reversed; self-intersecting input is rejected.
    static Domain polygon(std::vector<Point2> vertices)
    {
        spectral_bounds::detail::require(vertices.size() >= 3, ErrorKind::invalid_argument,
                                         "polygon needs at least 3 vertices");
        for (const auto& p : vertices) {
            spectral_bounds::detail::require(std::isfinite(p[0]) && std::isfinite(p[1]),
                                             ErrorKind::invalid_argument, "polygon vertex is not finite");
        }
        const double area = detail::signed_area(vertices);
        spectral_bounds::detail::require(area != 0.0, ErrorKind::degenerate_domain, "polygon has zero area");
        if (area < 0.0) {
            std::reverse(vertices.begin(), vertices.end());
        }
        spectral_bounds::detail::require(detail::is_simple(vertices), ErrorKind::invalid_argument,
                                         "polygon is not simple");
        return Domain(Polygon{std::move(vertices)});
    }

    int dimension() const
    {
        return std::visit(
            [](const auto& s) -> int {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, Box>) {
                    return static_cast<int>(s.sides.size());
                } else if constexpr (std::is_same_v<T, Ball>) {
                    return s.dim;
                } else {
                    return 2;
                }
            },
            shape_);
    }

    const Shape& shape() const { return shape_; }
    const Box* as_box() const { return std::get_if<Box>(&shape_); }
    const Ball* as_ball() const { return std::get_if<Ball>(&shape_); }
    const Polygon* as_polygon() const { return std::get_if<Polygon>(&shape_); }

    /// Same shape dilated by c about the origin.
    Domain dilated(double c) const
    {
        spectral_bounds::detail::require(std::isfinite(c) && c > 0.0, ErrorKind::invalid_argument,
                                         "dilation factor must be positive");
        return std::visit(
            [c](const auto& s) -> Domain {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, Box>) {
                    auto sides = s.sides;
                    for (auto& x : sides) x *= c;
                    return Domain::box(std::move(sides));
                } else if constexpr (std::is_same_v<T, Ball>) {
                    return Domain::ball(s.dim, s.radius * c);
                } else {
                    auto v = s.vertices;
                    for (auto& p : v) {
                        p[0] *= c;
                        p[1] *= c;
                    }
                    return Domain::polygon(std::move(v));
                }
            },
            shape_);
    }

private:
    explicit Domain(Shape shape) : shape_(std::move(shape)) {}

    Shape shape_;
};

struct GeometryInvariants {
    double volume = 0.0;
    double inertia = 0.0; ///< second moment about the centroid, min_a int |x-a|^2
    std::vector<double> centroid;
    double unit_ball_volume = 0.0;
};

namespace detail {

inline GeometryInvariants polygon_invariants(const Polygon& poly)
{
    // Shift to the first vertex so the moment subtraction below stays well conditioned.
    const Point2 origin = poly.vertices.front();
    double twice_area = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    double polar = 0.0;
    const std::size_t m = poly.vertices.size();
    for (std::size_t i = 0; i < m; ++i) {
        const double x0 = poly.vertices[i][0] - origin[0];
        const double y0 = poly.vertices[i][1] - origin[1];
        const double x1 = poly.vertices[(i + 1) % m][0] - origin[0];
        const double y1 = poly.vertices[(i + 1) % m][1] - origin[1];
        const double w = x0 * y1 - x1 * y0;
        twice_area += w;
        cx += (x0 + x1) * w;
        cy += (y0 + y1) * w;
        polar += w * (x0 * x0 + x0 * x1 + x1 * x1 + y0 * y0 + y0 * y1 + y1 * y1);
    }
    const double area = 0.5 * twice_area;
    spectral_bounds::detail::require(area > 0.0, ErrorKind::degenerate_domain, "polygon has zero area");
    cx /= 6.0 * area;
    cy /= 6.0 * area;
    polar /= 12.0;

    GeometryInvariants inv;
    inv.volume = area;
    inv.inertia = polar - area * (cx * cx + cy * cy);
    inv.centroid = {cx + origin[0], cy + origin[1]};
    inv.unit_ball_volume = unit_ball_volume(2);
    return inv;
}

} // namespace detail

inline GeometryInvariants invariants(const Domain& domain)
{
    return std::visit(
        [](const auto& s) -> GeometryInvariants {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Box>) {
                GeometryInvariants inv;
                inv.volume = 1.0;
                double sum_sq = 0.0;
                for (double x : s.sides) {
                    inv.volume *= x;
                    sum_sq += x * x;
                    inv.centroid.push_back(0.5 * x);
                }
                inv.inertia = inv.volume * sum_sq / 12.0;
                inv.unit_ball_volume = unit_ball_volume(static_cast<int>(s.sides.size()));
                return inv;
            } else if constexpr (std::is_same_v<T, Ball>) {
                GeometryInvariants inv;
                const int n = s.dim;
                inv.unit_ball_volume = unit_ball_volume(n);
                inv.volume = inv.unit_ball_volume * std::pow(s.radius, n);
                inv.inertia = n * inv.unit_ball_volume * std::pow(s.radius, n + 2) / (n + 2);
                inv.centroid.assign(static_cast<std::size_t>(n), 0.0);
                return inv;
            } else {
                return detail::polygon_invariants(s);
            }
        },
        domain.shape());
}

/// int_Omega |x - a|^2 dx, via the parallel-axis identity I + V |a - c|^2.
inline double second_moment_about(const Domain& domain, std::span<const double> a)
{
    const auto inv = invariants(domain);
    spectral_bounds::detail::require(a.size() == inv.centroid.size(), ErrorKind::invalid_argument,
                                     "point dimension does not match the domain");
    double dist_sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - inv.centroid[i];
        dist_sq += d * d;
    }
    return inv.inertia + inv.volume * dist_sq;
}

} // namespace spectral_bounds::geometry
