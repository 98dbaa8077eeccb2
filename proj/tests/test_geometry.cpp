#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spectral_bounds/geometry.hpp"

using namespace spectral_bounds;
using geometry::Domain;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorKind::numerical_breakdown;
}

} // namespace

TEST(UnitBall, LowDimensions)
{
    EXPECT_NEAR(geometry::unit_ball_volume(1), 2.0, 1e-15);
    EXPECT_NEAR(geometry::unit_ball_volume(2), std::numbers::pi, 1e-15);
    EXPECT_NEAR(geometry::unit_ball_volume(3), 4.0 * std::numbers::pi / 3.0, 1e-14);
    EXPECT_NEAR(geometry::unit_ball_volume(4), std::numbers::pi * std::numbers::pi / 2.0, 1e-14);
    EXPECT_EQ(kind_of([] { geometry::unit_ball_volume(0); }), ErrorKind::invalid_argument);
}

TEST(UnitBall, RecurrenceInDimension)
{
    // omega_n = 2 pi / n * omega_{n-2}
    for (int n = 3; n <= 20; ++n) {
        EXPECT_LT(rel(geometry::unit_ball_volume(n), 2.0 * std::numbers::pi / n * geometry::unit_ball_volume(n - 2)),
                  1e-13);
    }
}

TEST(Invariants, UnitSquare)
{
    const auto inv = geometry::invariants(Domain::box({1.0, 1.0}));
    EXPECT_DOUBLE_EQ(inv.volume, 1.0);
    EXPECT_NEAR(inv.inertia, 1.0 / 6.0, 1e-16);
    EXPECT_DOUBLE_EQ(inv.centroid[0], 0.5);
}

TEST(Invariants, BoxAgainstBruteForceMidpoint)
{
    const auto inv = geometry::invariants(Domain::box({2.0, 3.0}));
    EXPECT_DOUBLE_EQ(inv.volume, 6.0);
    EXPECT_NEAR(inv.inertia, 6.5, 1e-14);
    const auto m = oracle::polygon_midpoint({{0, 0}, {2, 0}, {2, 3}, {0, 3}}, 400);
    EXPECT_LT(rel(inv.inertia, m.inertia), 1e-5);

    const auto cube = geometry::invariants(Domain::box({1.0, 1.0, 1.0}));
    EXPECT_NEAR(cube.inertia, 0.25, 1e-15);
}

TEST(Invariants, BallAgainstRadialQuadrature)
{
    for (int n = 2; n <= 7; ++n) {
        const double r = 0.7 + 0.1 * n;
        const auto inv = geometry::invariants(Domain::ball(n, r));
        EXPECT_LT(rel(inv.inertia, oracle::ball_inertia_radial(n, r)), 1e-10) << "n=" << n;
        EXPECT_LT(rel(inv.volume, geometry::unit_ball_volume(n) * std::pow(r, n)), 1e-14);
    }
}

TEST(Invariants, PolygonMatchesBoxAndOrientation)
{
    const auto box = geometry::invariants(Domain::box({2.0, 1.0}));
    const auto ccw = geometry::invariants(Domain::polygon({{0, 0}, {2, 0}, {2, 1}, {0, 1}}));
    const auto cw = geometry::invariants(Domain::polygon({{0, 0}, {0, 1}, {2, 1}, {2, 0}}));
    EXPECT_LT(rel(ccw.volume, box.volume), 1e-15);
    EXPECT_LT(rel(ccw.inertia, box.inertia), 1e-14);
    EXPECT_LT(rel(cw.inertia, box.inertia), 1e-14);
    EXPECT_NEAR(cw.centroid[0], 1.0, 1e-15);
    EXPECT_NEAR(cw.centroid[1], 0.5, 1e-15);
}

TEST(Invariants, SlantedPolygonAgainstMidpointQuadrature)
{
    const std::vector<geometry::Point2> v{{0.1, 0.0}, {2.3, 0.4}, {1.9, 1.7}, {0.9, 1.1}, {-0.2, 1.4}};
    const auto inv = geometry::invariants(Domain::polygon(v));
    const auto m = oracle::polygon_midpoint(v, 1500);
    EXPECT_LT(rel(inv.volume, m.area), 2e-3);
    EXPECT_LT(rel(inv.centroid[0], m.cx), 2e-3);
    EXPECT_LT(rel(inv.centroid[1], m.cy), 2e-3);
    EXPECT_LT(rel(inv.inertia, m.inertia), 2e-3);
}

TEST(Invariants, FarFromOriginStaysAccurate)
{
    // same square translated by 1e6: the centroid shift must not wreck I
    const double o = 1e6;
    const auto inv = geometry::invariants(Domain::polygon({{o, o}, {o + 1, o}, {o + 1, o + 1}, {o, o + 1}}));
    EXPECT_LT(rel(inv.inertia, 1.0 / 6.0), 1e-9);
}

TEST(Invariants, TriangleClosedForm)
{
    // right triangle legs 1, 1: I about centroid = 1/18
    const auto inv = geometry::invariants(Domain::polygon({{0, 0}, {1, 0}, {0, 1}}));
    EXPECT_NEAR(inv.volume, 0.5, 1e-16);
    EXPECT_NEAR(inv.inertia, 1.0 / 18.0, 1e-15);
}

TEST(Domain, RejectsBadInput)
{
    EXPECT_EQ(kind_of([] { Domain::polygon({{0, 0}, {1, 1}, {2, 2}}); }), ErrorKind::degenerate_domain);
    EXPECT_EQ(kind_of([] { Domain::polygon({{0, 0}, {2, 2}, {2, 0}, {0, 1}}); }), ErrorKind::invalid_argument);
    EXPECT_EQ(kind_of([] { Domain::polygon({{0, 0}, {1, 0}}); }), ErrorKind::invalid_argument);
    EXPECT_EQ(kind_of([] { Domain::box({1.0}); }), ErrorKind::invalid_argument);
    EXPECT_EQ(kind_of([] { Domain::box({1.0, -1.0}); }), ErrorKind::invalid_argument);
    EXPECT_EQ(kind_of([] { Domain::ball(3, 0.0); }), ErrorKind::invalid_argument);
}

TEST(SecondMoment, MinimizedAtCentroid)
{
    const auto d = Domain::polygon({{0, 0}, {3, 0}, {2, 2}, {0, 1}});
    const auto inv = geometry::invariants(d);
    EXPECT_NEAR(geometry::second_moment_about(d, inv.centroid), inv.inertia, 1e-14);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 4.0);
    for (int i = 0; i < 50; ++i) {
        const std::vector<double> a{u(rng), u(rng)};
        EXPECT_GE(geometry::second_moment_about(d, a), inv.inertia);
    }
    // parallel-axis identity against brute force about the origin
    const auto m = oracle::polygon_midpoint({{0, 0}, {3, 0}, {2, 2}, {0, 1}}, 1500);
    const double about_origin = m.inertia + m.area * (m.cx * m.cx + m.cy * m.cy);
    EXPECT_LT(rel(geometry::second_moment_about(d, std::vector<double>{0.0, 0.0}), about_origin), 2e-3);
}

TEST(Dilation, ScalesVolumeAndInertia)
{
    const double c = 1.7;
    for (const auto& d : {Domain::box({1.0, 2.0, 0.5}), Domain::ball(4, 1.3),
                          Domain::polygon({{0, 0}, {3, 0}, {2, 2}, {0, 1}})}) {
        const int n = d.dimension();
        const auto a = geometry::invariants(d);
        const auto b = geometry::invariants(d.dilated(c));
        EXPECT_LT(rel(b.volume, a.volume * std::pow(c, n)), 1e-13);
        EXPECT_LT(rel(b.inertia, a.inertia * std::pow(c, n + 2)), 1e-13);
    }
}
