#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "evdiv/errors.hpp"
#include "evdiv/numtheory.hpp"
#include "evdiv/qfield.hpp"
#include "test_util.hpp"

using namespace evdiv;
using evtest::field;
using evtest::qe;

TEST_CASE("field descriptor validates D") {
    CHECK_NOTHROW(field(2));
    CHECK_NOTHROW(field(13));
    CHECK_THROWS_AS(field(1), std::invalid_argument);
    CHECK_THROWS_AS(field(4), std::invalid_argument);
    CHECK_THROWS_AS(field(12), std::invalid_argument);
    CHECK_THROWS_AS(field(9), std::invalid_argument);
    CHECK_THROWS_AS(FieldDesc(mpz_class(25) * 25), std::invalid_argument);
    CHECK(field(5).has_half_integers());
    CHECK(!field(2).has_half_integers());
}

TEST_CASE("arithmetic on worked values") {
    FieldDesc f = field(2);
    QuadElem zeta = qe(f, 3, 2);
    CHECK(zeta * zeta.conjugate() == QuadElem::one(f));
    QuadElem one_r2 = qe(f, 1, 1);
    CHECK(one_r2 * one_r2 == zeta);

    FieldDesc f5 = field(5);
    QuadElem golden = qe(f5, mpq_class(1, 2), mpq_class(1, 2));
    CHECK(golden + golden.conjugate() == QuadElem::one(f5));
}

TEST_CASE("norm, trace, twisted trace") {
    QuadElem zeta = qe(2, 3, 2);
    CHECK(zeta.norm() == 1);
    CHECK(zeta.trace() == 6);
    CHECK(qe(2, 0, 1).norm() == -2);
    CHECK(zeta.twisted_trace() == 8);
    CHECK(qe(2, 17, 12).twisted_trace() == 48);
    CHECK(qe(2, 7, 0).twisted_trace() == 0);
}

TEST_CASE("division and field mismatch") {
    QuadElem zeta = qe(2, 3, 2);
    CHECK(zeta / zeta == QuadElem::one(field(2)));
    CHECK(QuadElem::one(field(2)) / zeta == zeta.conjugate());  // N(zeta) = 1
    CHECK_THROWS_AS(zeta / QuadElem::zero(field(2)), std::domain_error);
    CHECK_THROWS_AS(zeta + qe(3, 1, 1), FieldMismatchError);
}

TEST_CASE("pow_int") {
    QuadElem zeta = qe(2, 3, 2);
    CHECK(pow_int(zeta, 2) == qe(2, 17, 12));
    CHECK(pow_int(zeta, 3) == qe(2, 99, 70));
    CHECK(pow_int(zeta, 0) == QuadElem::one(field(2)));
    CHECK_THROWS_AS(pow_int(zeta, -1), std::invalid_argument);
}

TEST_CASE("integrality witness") {
    IntegralityWitness w = is_integral(qe(5, mpq_class(1, 2), mpq_class(1, 2)));
    CHECK(w.is_integral);
    CHECK(w.trace == 1);
    CHECK(w.norm == -1);

    IntegralityWitness bad = is_integral(qe(2, mpq_class(1, 2), mpq_class(1, 2)));
    CHECK(!bad.is_integral);
    CHECK(bad.trace == 1);
    CHECK(bad.norm == mpq_class(-1, 4));

    CHECK(is_integral(qe(7, 5, 0)).is_integral);
}

TEST_CASE("clear_denominator worked values") {
    auto r = clear_denominator(qe(2, 0, mpq_class(1, 3)));
    CHECK(r.A == 3);
    CHECK(r.elem == qe(2, 0, 1));

    auto golden = clear_denominator(qe(5, mpq_class(1, 2), mpq_class(1, 2)));
    CHECK(golden.A == 1);

    auto rational = clear_denominator(qe(3, mpq_class(7, 2), 0));
    CHECK(rational.A == 2);
    CHECK(rational.elem == qe(3, 7, 0));

    CHECK_THROWS_AS(clear_denominator(QuadElem::zero(field(2))), std::invalid_argument);
}

TEST_CASE("clear_denominator is minimal") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<long> num(-30, 30), den(1, 30);
    for (long D : {2L, 5L, 13L}) {
        FieldDesc f = field(D);
        for (int i = 0; i < 200; ++i) {
            mpq_class u(num(rng), den(rng)), v(num(rng), den(rng));
            u.canonicalize();
            v.canonicalize();
            QuadElem x(f, u, v);
            if (x.is_zero()) continue;
            auto r = clear_denominator(x);
            CHECK(is_integral(r.elem).is_integral);
            for (const auto& [p, e] : factorize(r.A)) {
                mpq_class s(r.A / p);
                QuadElem smaller(f, x.u() * s, x.v() * s);
                CHECK(!is_integral(smaller).is_integral);
            }
        }
    }
}

TEST_CASE("eval_interval enclosures") {
    Interval r2 = eval_interval(qe(2, 0, 1), 64);
    CHECK(mpfr_cmp_d(r2.lo.raw(), 1.41421356237309) > 0);
    CHECK(mpfr_cmp_d(r2.hi.raw(), 1.41421356237310) < 0);
    BigFloat w = r2.width();
    CHECK(w.exp2() <= 1 - 62);  // value < 2, so width <= 2^(1+2-64) is implied

    Interval z = eval_interval(qe(2, 3, 2), 64);
    CHECK(mpfr_cmp_d(z.lo.raw(), 5.8284) > 0);
    CHECK(mpfr_cmp_d(z.hi.raw(), 5.8285) < 0);

    Interval zero = eval_interval(QuadElem::zero(field(2)), 64);
    CHECK(zero.lo.is_zero());
    CHECK(zero.hi.is_zero());

    CHECK_THROWS_AS(eval_interval(qe(2, 1, 1), 16), std::invalid_argument);
}

TEST_CASE("eval_interval nesting under refinement") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> coord(-1000, 1000), den(1, 50);
    for (int i = 0; i < 1000; ++i) {
        long D = (i % 3 == 0) ? 2 : (i % 3 == 1) ? 5 : 13;
        mpq_class u(coord(rng), den(rng)), v(coord(rng), den(rng));
        u.canonicalize();
        v.canonicalize();
        QuadElem x(field(D), u, v);
        Interval coarse = eval_interval(x, 64);
        Interval fine = eval_interval(x, 128);
        CHECK(coarse.lo.cmp(fine.lo) <= 0);
        CHECK(coarse.hi.cmp(fine.hi) >= 0);
    }
}

TEST_CASE("eval_interval handles cancellation") {
    // u close to -v*sqrt(2): 1393/985 is a convergent of sqrt(2).
    QuadElem x(field(2), mpq_class(-1393, 985), 1);
    Interval iv = eval_interval(x, 64);
    CHECK(!iv.contains_zero());
    CHECK(iv.is_positive() != iv.is_negative());
}

TEST_CASE("exact sign") {
    CHECK(qe(2, 3, 2).sign() == 1);
    CHECK(qe(2, -3, -2).sign() == -1);
    CHECK(qe(2, 3, -2).sign() == 1);    // 3 > 2 sqrt(2)
    CHECK(qe(2, -3, 2).sign() == -1);   // sqrt-part smaller
    CHECK(qe(2, 1, -1).sign() == -1);   // 1 < sqrt(2)
    CHECK(qe(2, -1, 1).sign() == 1);
    CHECK(QuadElem::zero(field(2)).sign() == 0);
    CHECK(qe(2, 0, -1).sign() == -1);
}

TEST_CASE("algebraic identities on random elements") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> coord(-50, 50), den(1, 9);
    for (int i = 0; i < 300; ++i) {
        long D = (i % 2 == 0) ? 2 : 5;
        FieldDesc f = field(D);
        mpq_class u(coord(rng), den(rng)), v(coord(rng), den(rng));
        u.canonicalize();
        v.canonicalize();
        QuadElem x(f, u, v);

        CHECK(QuadElem::rational(f, x.norm()) == x * x.conjugate());
        CHECK(QuadElem::rational(f, x.trace()) == x + x.conjugate());
        CHECK(x.twisted_trace() == x.mul_sqrt_d().trace());

        mpz_class k(static_cast<long>(rng() % 8));
        mpq_class nk = x.norm();
        mpq_class npow = 1;
        for (mpz_class j = 0; j < k; ++j) npow *= nk;
        CHECK(pow_int(x, k).norm() == npow);
    }
}

TEST_CASE("powers of integral elements stay integral") {
    std::mt19937 rng(13);
    for (long D : {2L, 5L, 13L}) {
        FieldDesc f = field(D);
        for (int i = 0; i < 50; ++i) {
            QuadElem x = evtest::random_integral(rng, f, 40);
            for (long k : {2L, 3L, 7L}) {
                CHECK(is_integral(pow_int(x, k)).is_integral);
            }
        }
    }
}

TEST_CASE("parse and format") {
    FieldDesc f2 = field(2), f5 = field(5);
    CHECK(parse_quad("sqrt(2)", f2) == qe(2, 0, 1));
    CHECK(parse_quad("3", f2) == qe(2, 3, 0));
    CHECK(parse_quad("1/2+1/2*sqrt(5)", f5) == qe(5, mpq_class(1, 2), mpq_class(1, 2)));
    CHECK(parse_quad("3+2*sqrt(2)", f2) == qe(2, 3, 2));
    CHECK(parse_quad("-sqrt(2)", f2) == qe(2, 0, -1));
    CHECK(parse_quad("7/2 - 3/2*sqrt(2)", f2) == qe(2, mpq_class(7, 2), mpq_class(-3, 2)));
    CHECK(parse_quad(" 2 + sqrt(2) ", f2) == qe(2, 2, 1));

    CHECK(format_quad(qe(2, 3, 2)) == "3/1 + 2/1*sqrt(2)");
    CHECK(format_quad(qe(5, mpq_class(1, 2), mpq_class(-1, 2))) == "1/2 - 1/2*sqrt(5)");

    // Round trip through the canonical form.
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> coord(-99, 99), den(1, 12);
    for (int i = 0; i < 200; ++i) {
        mpq_class u(coord(rng), den(rng)), v(coord(rng), den(rng));
        u.canonicalize();
        v.canonicalize();
        QuadElem x(f5, u, v);
        CHECK(parse_quad(format_quad(x), f5) == x);
    }

    CHECK_THROWS_AS(parse_quad("sqrt(7)", f5), std::invalid_argument);
    CHECK_THROWS_AS(parse_quad("", f2), std::invalid_argument);
    CHECK_THROWS_AS(parse_quad("1 +", f2), std::invalid_argument);
    CHECK_THROWS_AS(parse_quad("sqrt(2", f2), std::invalid_argument);
    CHECK_THROWS_AS(parse_quad("1/0", f2), std::invalid_argument);
}
