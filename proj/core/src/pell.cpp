#include "evdiv/pell.hpp"

#include <stdexcept>

namespace evdiv {

CFExpansion cf_sqrt(const mpz_class& D) {
    if (D < 2) throw std::invalid_argument("cf_sqrt requires D >= 2");
    mpz_class a0;
    mpz_sqrt(a0.get_mpz_t(), D.get_mpz_t());
    if (a0 * a0 == D) throw std::invalid_argument("cf_sqrt: D is a perfect square");

    CFExpansion cf{D, a0, {}};
    // sqrt(D) = a0 + 1/(...); iterate m,d,a until a = 2*a0 closes the period.
    mpz_class m = 0, d = 1, a = a0;
    while (true) {
        m = d * a - m;
        d = (D - m * m) / d;
        a = (a0 + m) / d;
        cf.period.push_back(a);
        if (a == 2 * a0) break;
    }
    return cf;
}

PellSolution fundamental_unit_solution(const mpz_class& D, int want_norm) {
    if (want_norm != 1 && want_norm != -1) {
        throw std::invalid_argument("want_norm must be +1 or -1");
    }
    CFExpansion cf = cf_sqrt(D);
    size_t r = cf.period.size();

    // Convergent h/k over a0 followed by the period, stopping one term
    // before the period closes: h^2 - D k^2 = (-1)^r.
    mpz_class h_prev = 1, h = cf.a0;
    mpz_class k_prev = 0, k = 1;
    for (size_t i = 0; i + 1 < r; ++i) {
        mpz_class hn = cf.period[i] * h + h_prev;
        mpz_class kn = cf.period[i] * k + k_prev;
        h_prev = h;
        h = hn;
        k_prev = k;
        k = kn;
    }

    bool odd_period = (r % 2) == 1;
    mpz_class base_norm = odd_period ? -1 : 1;
    if (want_norm == -1) {
        if (!odd_period) throw std::domain_error("no norm -1 solution for this D");
        PellSolution s{h, k, D, -1};
        if (s.x * s.x - D * s.y * s.y != -1) throw std::logic_error("pell: -1 check failed");
        return s;
    }
    mpz_class x = h, y = k;
    if (odd_period) {
        // (h + k sqrt(D))^2 has norm +1.
        x = h * h + D * k * k;
        y = 2 * h * k;
    }
    PellSolution s{x, y, D, 1};
    if (s.x * s.x - D * s.y * s.y != 1) throw std::logic_error("pell: +1 check failed");
    return s;
}

QuadElem unit_zeta(const FieldDesc& field) {
    PellSolution s = fundamental_unit_solution(field.D(), +1);
    return QuadElem(field, mpq_class(s.x), mpq_class(s.y));
}

}  // namespace evdiv
