#include <gtest/gtest.h>

#include <cmath>

#include "hlest/qpe.hpp"
#include "oracles.hpp"

using namespace hlest;

namespace {
ProbeState family(Family f, int p = 3) { return f == Family::kaiser ? make_probe(f, p, 0.98) : make_probe(f, p); }
}  // namespace

TEST(QpeDistribution, GridAlignedPhases) {
    const auto u = make_probe(Family::uniform, 3);
    const auto d0 = qpe_distribution(u, 0.0);
    EXPECT_NEAR(d0[0], 1.0, 1e-14);
    for (std::size_t l = 1; l < 8; ++l) EXPECT_NEAR(d0[l], 0.0, 1e-14);
    const auto d1 = qpe_distribution(u, 0.125);
    EXPECT_NEAR(d1[1], 1.0, 1e-14);
}

TEST(QpeDistribution, MatchesDenseOracle) {
    const auto s = make_probe(Family::cos1, 3);
    const auto ref = oracle::qpe_state_vector_distribution(s.amplitudes, 0.05);
    const auto d = qpe_distribution(s, 0.05);
    double sum = 0.0;
    for (std::size_t l = 0; l < d.size(); ++l) {
        EXPECT_NEAR(d[l], ref[l], 1e-12);
        sum += d[l];
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
    for (Family f : {Family::uniform, Family::cos2, Family::kaiser})
        for (int p : {2, 5, 7})
            for (double th : {0.0, 0.013, 0.31, 0.5, 0.77, 0.999}) {
                const auto st = family(f, p);
                const auto r = oracle::qpe_state_vector_distribution(st.amplitudes, th);
                const auto g = qpe_distribution(st, th);
                for (std::size_t l = 0; l < g.size(); ++l) EXPECT_NEAR(g[l], r[l], 1e-12);
            }
}

TEST(QpeDistribution, RejectsThetaOutsideUnitInterval) {
    const auto u = make_probe(Family::uniform, 3);
    EXPECT_THROW(qpe_distribution(u, 1.0), domain_error);
    EXPECT_THROW(qpe_distribution(u, -0.1), domain_error);
    EXPECT_THROW(failure_probability(u, 1.5), domain_error);
}

TEST(Failure, ExactHitIsZero) { EXPECT_NEAR(failure_probability(make_probe(Family::uniform, 3), 0.0), 0.0, 1e-14); }

TEST(Failure, PeriodicDistance) {
    EXPECT_NEAR(periodic_distance(0.0, 0.9), 0.1, 1e-15);
    EXPECT_NEAR(periodic_distance(0.875, 0.05), 0.175, 1e-15);
    EXPECT_EQ(periodic_distance(0.3, 0.3), 0.0);
}

TEST(Failure, ReportedMaxima) {
    struct Case {
        Family f;
        double centre, below;
    };
    const Case cases[] = {{Family::uniform, 0.1789, 0.18},
                          {Family::cos1, 0.0108, 0.011},
                          {Family::cos2, 0.0139, 0.014},
                          {Family::kaiser, 0.0086, 0.009}};
    for (const auto& c : cases) {
        const auto r = max_failure(family(c.f), 100000);
        EXPECT_NEAR(r.max, c.centre, 5e-4) << family_name(c.f);
        EXPECT_LT(r.max, c.below) << family_name(c.f);
    }
}

TEST(Failure, Ordering) {
    const double k = max_failure(family(Family::kaiser), 20000).max;
    const double c1 = max_failure(family(Family::cos1), 20000).max;
    const double c2 = max_failure(family(Family::cos2), 20000).max;
    const double u = max_failure(family(Family::uniform), 20000).max;
    EXPECT_LT(k, c1);
    EXPECT_LT(c1, c2);
    EXPECT_LT(c2, u);
}

TEST(Failure, MirrorSymmetryAndBounds) {
    for (Family f : {Family::uniform, Family::cos1, Family::cos2, Family::kaiser})
        for (int p : {3, 5})
            for (int i = 1; i < 500; ++i) {
                const double th = i / 500.0;
                const auto s = family(f, p);
                const double a = failure_probability(s, th);
                EXPECT_NEAR(a, failure_probability(s, 1.0 - th), 1e-10);
                EXPECT_GE(a, 0.0);
                EXPECT_LE(a, 1.0);
            }
}

TEST(MaxFailure, TwoPointsAndCurveRange) {
    const auto s = family(Family::cos1);
    const auto r = max_failure(s, 2);
    EXPECT_EQ(r.max, std::max(failure_probability(s, 0.0), failure_probability(s, 0.5)));
    ASSERT_EQ(r.curve.thetas.size(), 2u);
    const auto big = max_failure(s, 1000);
    EXPECT_EQ(big.curve.thetas.size(), 501u);
    for (double t : big.curve.thetas) EXPECT_LE(t, 0.5);
    EXPECT_THROW(max_failure(s, 0), domain_error);
}
