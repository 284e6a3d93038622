#include "evdiv/certificate_io.hpp"

#include <json.hpp>

#include <stdexcept>

#include "evdiv/numtheory.hpp"
#include "evdiv/pell.hpp"

namespace evdiv {

using nlohmann::json;

mpq_class parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return mpq_class(mpz_class(text));
        mpz_class num(text.substr(0, slash));
        mpz_class den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed rational: " + text);
    }
}

std::string format_rational(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string certificate_to_json(const ApproxCertificate& cert, bool pretty) {
    const ConstructionParams& p = cert.params;
    json j;
    j["alpha"] = format_quad(p.alpha);
    j["D"] = p.alpha.field().D().get_str();
    j["A"] = p.A.get_str();
    j["mode"] = to_string(p.mode);
    j["params"] = {
        {"L", p.L.get_str()},   {"Lprime", p.Lp.get_str()}, {"M", p.M.get_str()},
        {"m1", p.m1.get_str()}, {"m2", p.m2.get_str()},     {"n", p.n.get_str()},
        {"N", p.N.get_str()},
    };
    j["P"] = cert.P.get_str();
    j["P_split"] = {cert.P_split.d1.get_str(), cert.P_split.d2.get_str()};
    j["Q"] = cert.Q.get_str();
    j["Q_split"] = {cert.Q_split.d1.get_str(), cert.Q_split.d2.get_str()};
    j["eps"] = format_rational(p.eps);
    j["checks"] = {
        {"approx", cert.checks.approx},
        {"split_P", cert.checks.split_P},
        {"split_Q", cert.checks.split_Q},
        {"q_magnitude", cert.checks.q_magnitude},
    };
    return pretty ? j.dump(2) : j.dump();
}

namespace {

mpz_class get_int(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string()) {
        throw std::invalid_argument(std::string("certificate: missing integer field ") + key);
    }
    return mpz_class(j[key].get<std::string>());
}

std::vector<mpz_class> prime_list(const mpz_class& product) {
    std::vector<mpz_class> primes;
    for (const auto& [p, e] : factorize(product)) primes.push_back(p);
    return primes;
}

}  // namespace

ApproxCertificate certificate_from_json(const std::string& text) {
    json j = json::parse(text);

    FieldDesc field{get_int(j, "D")};
    QuadElem alpha = parse_quad(j.at("alpha").get<std::string>(), field);
    mpz_class A = get_int(j, "A");
    QuadElem alpha_int(field, alpha.u() * mpq_class(A), alpha.v() * mpq_class(A));

    ConstructionParams params{alpha,
                              A,
                              alpha_int,
                              unit_zeta(field),
                              parse_rational(j.at("eps").get<std::string>()),
                              get_int(j.at("params"), "L"),
                              get_int(j.at("params"), "Lprime"),
                              {},
                              {},
                              get_int(j.at("params"), "M"),
                              get_int(j.at("params"), "m1"),
                              get_int(j.at("params"), "m2"),
                              get_int(j.at("params"), "n"),
                              get_int(j.at("params"), "N"),
                              construct_mode_from_string(j.at("mode").get<std::string>())};
    params.L_primes = prime_list(params.L);
    params.Lp_primes = prime_list(params.Lp);

    ApproxCertificate cert{std::move(params), get_int(j, "P"), get_int(j, "Q"), {}, {}, {}, {}};
    const auto& ps = j.at("P_split");
    const auto& qs = j.at("Q_split");
    if (!ps.is_array() || ps.size() != 2 || !qs.is_array() || qs.size() != 2) {
        throw std::invalid_argument("certificate: P_split/Q_split must be 2-element arrays");
    }
    cert.P_split = SplitPair{mpz_class(ps[0].get<std::string>()),
                             mpz_class(ps[1].get<std::string>())};
    cert.Q_split = SplitPair{mpz_class(qs[0].get<std::string>()),
                             mpz_class(qs[1].get<std::string>())};
    if (j.contains("checks")) {
        const auto& c = j.at("checks");
        cert.checks.approx = c.value("approx", false);
        cert.checks.split_P = c.value("split_P", false);
        cert.checks.split_Q = c.value("split_Q", false);
        cert.checks.q_magnitude = c.value("q_magnitude", false);
    }
    return cert;
}

}  // namespace evdiv
