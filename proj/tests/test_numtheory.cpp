#include <gtest/gtest.h>

#include <numeric>

#include "chebmax/numtheory.hpp"
#include "oracles.hpp"

using namespace chebmax;

TEST(NumTheory, PrimalityMatchesTrialDivision) {
    for (u64 n = 0; n < 20000; ++n) ASSERT_EQ(is_prime(n), oracle::is_prime(n)) << n;
    EXPECT_TRUE(is_prime(4294967291ULL));
    EXPECT_FALSE(is_prime(4294967297ULL));  // 641 * 6700417
}

TEST(NumTheory, LegendreExamples) {
    EXPECT_EQ(legendre(5, 13), -1);
    EXPECT_EQ(legendre(13, 5), -1);
    EXPECT_EQ(legendre(0, 7), 0);
    EXPECT_EQ(legendre(-1, 13), 1);
    EXPECT_THROW(legendre(3, 9), DomainError);
    EXPECT_THROW(legendre(3, 2), DomainError);
}

TEST(NumTheory, LegendreMatchesSquareList) {
    for (u64 p : oracle::odd_primes(3, 200)) {
        std::vector<int> sq(p, -1);
        sq[0] = 0;
        for (u64 y = 1; y < p; ++y) sq[y * y % p] = 1;
        for (u64 a = 0; a < p; ++a) ASSERT_EQ(legendre(static_cast<i64>(a), p), sq[a]) << a << " mod " << p;
    }
}

TEST(NumTheory, OrderExamples) {
    EXPECT_EQ(mult_order(13, 25), 20u);
    EXPECT_EQ(mult_order(13, 5), 4u);
    EXPECT_EQ(mult_order(1, 9), 1u);
    EXPECT_EQ(pm_order(13, 7), 1u);
    EXPECT_EQ(pm_order(17, 13), 3u);
    EXPECT_EQ(pm_order(2, 5), 2u);
    EXPECT_THROW(mult_order(5, 25), DomainError);
    EXPECT_THROW(pm_order(13, 13), DomainError);
}

TEST(NumTheory, OrdersAgreeWithBruteForce) {
    for (u64 m = 3; m < 200; ++m) {
        const u64 phi = euler_phi(m);
        for (u64 a = 1; a < m; ++a) {
            if (std::gcd(a, m) != 1) continue;
            u64 k = 1, x = a % m;
            while (x != 1) x = x * a % m, ++k;
            u64 j = 1;
            x = a % m;
            while (x != 1 && x != m - 1) x = x * a % m, ++j;
            const u64 ord = mult_order(static_cast<i64>(a), m);
            const u64 pm = pm_order(static_cast<i64>(a), m);
            ASSERT_EQ(ord, k);
            ASSERT_EQ(pm, j);
            ASSERT_EQ(phi % ord, 0u);
            ASSERT_EQ(ord % pm, 0u);
            ASSERT_TRUE(ord / pm == 1 || ord / pm == 2);
        }
    }
}

TEST(NumTheory, PrimitiveRoots) {
    EXPECT_EQ(primroots(5), (std::set<u64>{2, 3}));
    EXPECT_EQ(primroots(7), (std::set<u64>{3, 5}));
    EXPECT_EQ(primroots(13).size(), 4u);
    for (u64 p : oracle::odd_primes(3, 300)) {
        std::set<u64> brute;
        for (u64 a = 1; a < p; ++a) {
            std::set<u64> seen;
            u64 x = 1;
            for (u64 i = 0; i < p - 1; ++i) x = x * a % p, seen.insert(x);
            if (seen.size() == p - 1) brute.insert(a);
        }
        ASSERT_EQ(primroots(p), brute) << p;
        ASSERT_EQ(brute.size(), euler_phi(p - 1));
    }
}

TEST(NumTheory, Crt) {
    const std::vector<i64> r1{2, 3, 1};
    const std::vector<u64> m1{5, 13, 4};
    EXPECT_EQ(crt(r1, m1), 237u);
    EXPECT_EQ(crt(std::vector<i64>{0}, std::vector<u64>{9}), 0u);
    EXPECT_EQ(crt(std::vector<i64>{1, 1}, std::vector<u64>{3, 4}), 1u);
    EXPECT_THROW(crt(std::vector<i64>{1, 1}, std::vector<u64>{6, 4}), DomainError);
    // every residue pair is hit exactly once
    for (u64 a = 0; a < 7; ++a) {
        for (u64 b = 0; b < 9; ++b) {
            const u64 x = crt(std::vector<i64>{static_cast<i64>(a), static_cast<i64>(b)}, std::vector<u64>{7, 9});
            ASSERT_LT(x, 63u);
            ASSERT_EQ(x % 7, a);
            ASSERT_EQ(x % 9, b);
        }
    }
}

TEST(NumTheory, ValuationAndFactors) {
    EXPECT_EQ(valuation(BigInt(169) * 7, 13), 2u);
    EXPECT_EQ(valuation(u64{48}, 2), 4u);
    EXPECT_THROW(valuation(u64{0}, 2), DomainError);
    EXPECT_EQ(prime_factors(60), (std::vector<u64>{2, 3, 5}));
    EXPECT_EQ(euler_phi(25), 20u);
}
