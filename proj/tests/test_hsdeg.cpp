#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hlest/hsdeg.hpp"
#include "oracles.hpp"

using namespace hlest;

namespace {
// Exact scan with rationals: least l with 4 t^l/(2^l l!) <= eps/8, for integer t, eps = 2^-e.
long exact_degree(unsigned long t, unsigned long e) {
    mpq_class term(4);  // l = 0
    const mpq_class target(mpz_class(1), mpz_class(1) << static_cast<mp_bitcnt_t>(e + 3));
    for (unsigned long l = 0; l <= 400; ++l) {
        if (l > 0) {
            term *= mpq_class(t, 2 * l);
            term.canonicalize();
        }
        if (term <= target) return static_cast<long>(l) - 1;
    }
    return -2;
}
}  // namespace

TEST(HsDegree, UnitTime) { EXPECT_EQ(hs_degree(1.0, std::ldexp(1.0, -10)), 5u); }

TEST(HsDegree, AtLeastLinearInTime) { EXPECT_GE(hs_degree(1e4, std::ldexp(1.0, -14)), 10000u); }

TEST(HsDegree, ArgumentErrors) {
    EXPECT_THROW(hs_degree(0.0, 0.1), domain_error);
    EXPECT_THROW(hs_degree(-1.0, 0.1), domain_error);
    EXPECT_THROW(hs_degree(1.0, 0.0), domain_error);
    EXPECT_THROW(hs_degree(1.0, 1.0), domain_error);
}

TEST(HsDegree, RandomMinimality) {
    std::mt19937_64 g(314);
    std::uniform_real_distribution<double> lt(0.0, 6.0), le(-12.0, std::log10(0.5));
    for (int trial = 0; trial < 100; ++trial) {
        const double t = std::pow(10.0, lt(g));
        const double eps = std::pow(10.0, le(g));
        const auto Q = hs_degree(t, eps);
        EXPECT_LE(hs_degree_margin(t, eps, Q + 1), 0.0) << t << " " << eps;
        EXPECT_GT(hs_degree_margin(t, eps, Q), 0.0) << t << " " << eps;
        EXPECT_LE(static_cast<double>(Q), 3.0 * t + 20.0 * std::log(1.0 / eps));
    }
}

TEST(HsDegree, Monotone) {
    std::uint64_t prev = 0;
    for (double t = 0.5; t < 3000.0; t *= 1.07) {
        const auto Q = hs_degree(t, 1e-6);
        EXPECT_GE(Q, prev);
        prev = Q;
    }
    prev = ~std::uint64_t{0};
    for (double eps = 1e-14; eps < 0.9; eps *= 3.0) {
        const auto Q = hs_degree(50.0, eps);
        EXPECT_LE(Q, prev);
        prev = Q;
    }
}

TEST(HsDegree, ExactRationalAgreement) {
    for (unsigned long t = 1; t <= 20; ++t)
        for (unsigned long e : {1ul, 4ul, 10ul, 14ul, 30ul}) {
            const long ref = exact_degree(t, e);
            ASSERT_GE(ref, 0);
            ASSERT_LE(ref, 170);
            EXPECT_EQ(static_cast<long>(hs_degree(static_cast<double>(t), std::ldexp(1.0, -static_cast<int>(e)))), ref)
                << t << " " << e;
        }
}

TEST(HsDegree, QueryStruct) { EXPECT_EQ(hs_degree(DegreeQuery{1.0, std::ldexp(1.0, -10)}), 5u); }
