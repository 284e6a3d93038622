#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "evdiv/certificate_io.hpp"
#include "evdiv/construct.hpp"
#include "test_util.hpp"

using namespace evdiv;
using evtest::qe;

TEST_CASE("rational text helpers") {
    CHECK(parse_rational("1/4") == mpq_class(1, 4));
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("6/8") == mpq_class(3, 4));
    CHECK(parse_rational("-2/3") == mpq_class(-2, 3));
    CHECK(format_rational(mpq_class(1, 4)) == "1/4");
    CHECK(format_rational(mpq_class(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
}

TEST_CASE("certificate round trip: symmetric") {
    ApproxCertificate cert = symmetric_construct(qe(2, 0, 1), mpq_class(1, 4));
    std::string json = certificate_to_json(cert);
    ApproxCertificate back = certificate_from_json(json);

    CHECK(back.P == cert.P);
    CHECK(back.Q == cert.Q);
    CHECK(back.P_split.d1 == cert.P_split.d1);
    CHECK(back.Q_split.d2 == cert.Q_split.d2);
    CHECK(back.params.L == cert.params.L);
    CHECK(back.params.Lp == cert.params.Lp);
    CHECK(back.params.M == cert.params.M);
    CHECK(back.params.N == cert.params.N);
    CHECK(back.params.eps == cert.params.eps);
    CHECK(back.params.mode == ConstructMode::Symmetric);
    CHECK(back.params.alpha == cert.params.alpha);
    CHECK(back.params.alpha_int == cert.params.alpha_int);
    CHECK(back.params.zeta == cert.params.zeta);
    CHECK(back.params.L_primes == cert.params.L_primes);

    CHECK(verify_certificate(back).all_pass());
}

TEST_CASE("certificate round trip: strong and twisted") {
    auto strong = strong_sequence(qe(2, 3, 2), 1, 1).front();
    ApproxCertificate back = certificate_from_json(certificate_to_json(strong));
    CHECK(back.params.mode == ConstructMode::Strong);
    CHECK(back.params.eps == 0);
    CHECK(back.P == 280);
    CHECK(verify_certificate(back).all_pass());

    auto twisted = twisted_construct(qe(2, 0, 1), mpq_class(1, 4), TwistedSide::P);
    ApproxCertificate tback = certificate_from_json(certificate_to_json(twisted));
    CHECK(tback.params.mode == ConstructMode::TwistedP);
    CHECK(verify_certificate(tback).all_pass());
}

TEST_CASE("malformed certificates are rejected") {
    CHECK_THROWS(certificate_from_json("{}"));
    CHECK_THROWS(certificate_from_json("not json"));
    ApproxCertificate cert = symmetric_construct(qe(2, 0, 1), mpq_class(1, 4));
    std::string json = certificate_to_json(cert);
    // Drop the required P field.
    auto pos = json.find("\"P\"");
    REQUIRE(pos != std::string::npos);
    std::string broken = json.substr(0, pos) + "\"X\"" + json.substr(pos + 3);
    CHECK_THROWS(certificate_from_json(broken));
}

TEST_CASE("tampering is caught after deserialization") {
    ApproxCertificate cert = symmetric_construct(qe(3, 2, 1), mpq_class(1, 4));
    std::string json = certificate_to_json(cert, false);
    std::string p = cert.P.get_str();
    char& digit = p[p.size() / 2];
    digit = digit == '7' ? '8' : '7';
    auto pos = json.find(cert.P.get_str());
    REQUIRE(pos != std::string::npos);
    json.replace(pos, p.size(), p);
    ApproxCertificate bad = certificate_from_json(json);
    CHECK(!verify_certificate(bad).all_pass());
}
