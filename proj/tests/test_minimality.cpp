#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "spectral_bounds/extremal.hpp"

using namespace spectral_bounds;
using extremal::FeasibleProfile;

TEST(FeasibleProfile, ExtremalProfileHasZeroSlack)
{
    const auto psi = extremal::profile_with_moment(1.0, 1.0, 1, 3.0);
    const auto f = FeasibleProfile::from_extremal(psi);
    EXPECT_TRUE(f.feasible());
    for (int d : {1, 3, 5}) {
        EXPECT_NEAR(f.moment(d), extremal::psi_moment(psi, d), 1e-12 * extremal::psi_moment(psi, d));
    }
}

TEST(FeasibleProfile, SteepEdgeBathtubIsNotBetter)
{
    // plateau M on [0, r0] with the steepest allowed edge, r0 tuned to the b-moment
    const double M = 1.0, L = 1.0, m_star = 3.0;
    const int b = 1, d = 3;
    const auto psi = extremal::profile_with_moment(M, L, b, m_star);
    for (double r0 : {0.5, 1.0, 2.0, 4.0}) {
        FeasibleProfile f;
        f.M = M;
        f.L = L;
        f.radii = {0.0, r0, r0 + M / L};
        f.values = {M, M, 0.0};
        const double c = std::pow(m_star / f.moment(b), 1.0 / (b + 1.0));
        const auto g = f.rescaled(c);
        if (!g.feasible()) continue;
        EXPECT_GE(g.moment(d) - extremal::psi_moment(psi, d), -1e-9);
    }
}

TEST(FeasibleProfile, RandomProfilesRespectCaps)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
        const auto f = extremal::random_feasible_profile(2.0, 0.5, rng);
        EXPECT_TRUE(f.feasible());
        EXPECT_EQ(f.radii.front(), 0.0);
        EXPECT_GE(f.radii.size(), 2u);
    }
}

TEST(ProfileMinimality, RandomizedMinimalityPlanar)
{
    const auto r = extremal::lemma1_minimality(1.0, 1.0, 1, 3, 2.0, 10000, 42);
    EXPECT_EQ(r.trials, 10000u);
    EXPECT_EQ(r.violations, 0u);
    EXPECT_GE(r.min_slack, -1e-9);
}

TEST(ProfileMinimality, ReproducibleForFixedSeed)
{
    const auto a = extremal::lemma1_minimality(0.3, 2.0, 2, 6, 0.05, 500, 9);
    const auto b = extremal::lemma1_minimality(0.3, 2.0, 2, 6, 0.05, 500, 9);
    EXPECT_EQ(a.min_slack, b.min_slack);
    EXPECT_EQ(a.rejected, b.rejected);
    const auto c = extremal::lemma1_minimality(0.3, 2.0, 2, 6, 0.05, 500, 10);
    EXPECT_NE(a.min_slack, c.min_slack);
}

TEST(ProfileMinimality, BelowTriangleMomentIsInfeasible)
{
    EXPECT_THROW(extremal::lemma1_minimality(1.0, 1.0, 1, 3, 0.01, 10, 1), Error);
}
