#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "evdiv/numtheory.hpp"

using namespace evdiv;

TEST_CASE("mobius and euler phi") {
    CHECK(mobius(1) == 1);
    CHECK(euler_phi(1) == 1);
    CHECK(mobius(15) == 1);
    CHECK(euler_phi(15) == 8);
    CHECK(mobius(12) == 0);
    CHECK(mobius(30) == -1);
    CHECK(euler_phi(35) == 24);
    CHECK(euler_phi(323323) == 207360);
}

TEST_CASE("phi is multiplicative on square-free products") {
    std::vector<long> primes{3, 5, 7, 11, 13, 17, 19, 23};
    std::mt19937 rng(3);
    for (int i = 0; i < 100; ++i) {
        mpz_class prod = 1, expect = 1;
        for (long p : primes) {
            if (rng() & 1) {
                prod *= p;
                expect *= p - 1;
            }
        }
        CHECK(euler_phi(prod) == expect);
        if (prod > 1) CHECK(mobius(prod * 9) == 0);
    }
}

TEST_CASE("greedy block selection, worked values") {
    BlockPair q = select_blocks(mpq_class(1, 4));
    CHECK(q.L.primes == std::vector<mpz_class>{3});
    CHECK(q.L.product == 3);
    CHECK(q.L.totient_ratio == mpq_class(2, 3));
    CHECK(q.Lp.primes == std::vector<mpz_class>{5, 7});
    CHECK(q.Lp.product == 35);
    CHECK(q.Lp.totient_ratio == mpq_class(24, 35));

    BlockPair s = select_blocks(mpq_class(3, 20));
    CHECK(s.L.primes == std::vector<mpz_class>{3, 5});
    CHECK(s.L.totient_ratio == mpq_class(8, 15));
    CHECK(s.Lp.primes == std::vector<mpz_class>{7, 11, 13, 17, 19});
    CHECK(s.Lp.product == 323323);
    CHECK(s.Lp.totient_ratio == mpq_class(207360, 323323));

    BlockPair t = select_blocks(mpq_class(1, 100));
    CHECK(t.L.primes == std::vector<mpz_class>{3, 5, 17});
    CHECK(t.L.totient_ratio == mpq_class(128, 255));
}

TEST_CASE("block invariants over a range of eps") {
    mpq_class half(1, 2);
    for (int num = 1; num <= 12; ++num) {
        mpq_class eps(num, 25);
        if (eps >= half) continue;
        BlockPair bp = select_blocks(eps);
        CHECK(bp.L.totient_ratio > half);
        CHECK(bp.L.totient_ratio < half + eps);
        CHECK(bp.Lp.totient_ratio > half);
        CHECK(bp.Lp.totient_ratio < half + eps);
        mpz_class prod = 1, expect_phi = 1;
        for (const auto& p : bp.L.primes) {
            prod *= p;
            expect_phi *= p - 1;
            for (const auto& q : bp.Lp.primes) CHECK(p != q);
        }
        CHECK(prod == bp.L.product);
        CHECK(mpq_class(expect_phi, prod) == bp.L.totient_ratio);
        // Deterministic re-run.
        BlockPair again = select_blocks(eps);
        CHECK(again.L.product == bp.L.product);
        CHECK(again.Lp.product == bp.Lp.product);
    }
    CHECK_THROWS_AS(select_blocks(mpq_class(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(select_blocks(mpq_class(0)), std::invalid_argument);
}

TEST_CASE("budget flag") {
    CHECK(!select_blocks(mpq_class(1, 4)).budget_exceeded);
    CHECK(select_blocks(mpq_class(1, 4), 100).budget_exceeded);
    CHECK(select_blocks(mpq_class(3, 20)).budget_exceeded == false);  // 4849845 < 10^7
    CHECK(select_blocks(mpq_class(1, 10), 1000000).budget_exceeded);
}

TEST_CASE("crt choice of M, worked values") {
    CrtChoice a = crt_smallest_M(3, 35);
    CHECK(a.M == 35);
    CHECK(a.m1 == 12);
    CHECK(a.m2 == 1);

    CrtChoice b = crt_smallest_M(2, 35);
    CHECK(b.M == 35);
    CHECK(b.m1 == 18);
    CHECK(b.m2 == 1);

    CrtChoice c = crt_smallest_M(3, 1);
    CHECK(c.M == 2);
    CHECK(c.m1 == 1);
    CHECK(c.m2 == 2);

    CHECK_THROWS_AS(crt_smallest_M(15, 35), std::invalid_argument);
    CHECK_THROWS_AS(crt_smallest_M(2, 2), std::invalid_argument);  // the parity obstruction
}

TEST_CASE("crt minimality by scan") {
    std::vector<std::pair<long, long>> cases{{3, 35}, {15, 77}, {2, 105}, {105, 2},
                                             {1, 6},  {7, 1},  {33, 35}, {15, 323323 % 1000 + 1}};
    for (auto [L, Lp] : cases) {
        if (mpz_class(gcd(mpz_class(L), mpz_class(Lp))) != 1) continue;
        CrtChoice c = crt_smallest_M(L, Lp);
        CHECK(mpz_class((c.M + 1) % L) == 0);
        CHECK(mpz_class(c.M % Lp) == 0);
        CHECK(c.m1 * L == c.M + 1);
        CHECK(c.m2 * Lp == c.M);
        for (mpz_class m = 1; m < c.M; ++m) {
            bool ok = mpz_class((m + 1) % L) == 0 && mpz_class(m % Lp) == 0;
            CHECK(!ok);
        }
    }
}
