#include "evdiv/tracefact.hpp"

#include <cmath>
#include <stdexcept>

#include "evdiv/errors.hpp"
#include "evdiv/numtheory.hpp"

namespace evdiv {

namespace {

void require_integral(const QuadElem& omega, const char* who) {
    if (!is_integral(omega).is_integral) {
        throw std::invalid_argument(std::string(who) + ": omega must be integral");
    }
}

mpz_class to_integer(const mpq_class& q, const char* what) {
    if (q.get_den() != 1) throw std::logic_error(std::string(what) + ": expected an integer");
    return q.get_num();
}

}  // namespace

mpz_class trace_power(const QuadElem& omega, const mpz_class& k) {
    require_integral(omega, "trace_power");
    if (k < 1) throw std::invalid_argument("trace_power requires k >= 1");
    return to_integer(pow_int(omega, k).trace(), "trace_power");
}

mpz_class twisted_trace_power(const QuadElem& omega, const mpz_class& k) {
    require_integral(omega, "twisted_trace_power");
    if (k < 1) throw std::invalid_argument("twisted_trace_power requires k >= 1");
    return to_integer(pow_int(omega, k).twisted_trace(), "twisted_trace_power");
}

TraceFactorization phi_psi(const QuadElem& omega, const mpz_class& L, bool twisted) {
    require_integral(omega, "phi_psi");
    if (L < 1) throw std::invalid_argument("phi_psi requires L >= 1");
    auto fac = factorize(L);
    for (const auto& [p, e] : fac) {
        if (e > 1) throw std::invalid_argument("phi_psi requires square-free L");
    }
    if (!twisted) {
        if (mpz_even_p(L.get_mpz_t())) {
            throw std::invalid_argument("phi_psi: untwisted L must be odd");
        }
        if (omega.trace() == 0) {
            throw std::invalid_argument("phi_psi: untwisted requires tr(omega) != 0");
        }
    } else if (omega.is_rational()) {
        throw std::invalid_argument("phi_psi: twisted requires irrational omega");
    }

    auto trace_of = [&](const mpz_class& k) {
        return twisted ? twisted_trace_power(omega, k) : trace_power(omega, k);
    };

    // Divisors ell of L are subsets of its prime factors; mu(ell) is the
    // subset-size parity. Terms trace(omega^(L/ell)) go to the numerator
    // for mu = +1 and the denominator for mu = -1.
    size_t t = fac.size();
    mpz_class numerator = 1, denominator = 1;
    for (size_t mask = 0; mask < (size_t(1) << t); ++mask) {
        mpz_class ell = 1;
        unsigned bits = 0;
        for (size_t i = 0; i < t; ++i) {
            if (mask & (size_t(1) << i)) {
                ell *= fac[i].first;
                ++bits;
            }
        }
        mpz_class term = trace_of(L / ell);
        if (bits % 2 == 0) {
            numerator *= term;
        } else {
            if (term == 0) {
                throw std::domain_error("phi_psi: zero trace encountered in a denominator");
            }
            denominator *= term;
        }
    }

    TraceFactorization out{omega, L, trace_of(L), 0, 0, twisted};
    if (!mpz_divisible_p(numerator.get_mpz_t(), denominator.get_mpz_t())) {
        throw NonExactDivisionError("phi_psi: Phi product division is not exact");
    }
    mpz_divexact(out.phi_part.get_mpz_t(), numerator.get_mpz_t(), denominator.get_mpz_t());
    if (out.phi_part == 0) {
        throw std::domain_error("phi_psi: zero factor (magnitude precondition violated)");
    }
    if (!mpz_divisible_p(out.total.get_mpz_t(), out.phi_part.get_mpz_t())) {
        throw NonExactDivisionError("phi_psi: Psi cofactor division is not exact");
    }
    mpz_divexact(out.psi_part.get_mpz_t(), out.total.get_mpz_t(), out.phi_part.get_mpz_t());
    return out;
}

MagnitudeReport magnitude_bounds(const TraceFactorization& fact, const PrecisionPolicy& policy) {
    if (fact.twisted && fact.L == 1) {
        throw std::invalid_argument("magnitude_bounds: twisted case requires L > 1");
    }
    // |conj(omega)/omega| <= 1/2, i.e. 2|conj(omega)| <= |omega|.
    MagnitudeProduct lhs, rhs;
    lhs.mul(fact.omega.conjugate()).mul(mpq_class(2));
    rhs.mul(fact.omega);
    if (compare_abs(lhs, rhs, policy) == AbsOrder::Greater) {
        throw std::domain_error("magnitude_bounds: |conj(omega)/omega| > 1/2");
    }

    mpz_class phi_L = euler_phi(fact.L);
    mpq_class half(1, 2);
    const mpz_class& D = fact.omega.field().D();

    auto ratio_of = [&](const mpz_class& part, const mpz_class& omega_exp, bool with_sqrt_d) {
        MagnitudeProduct r;
        r.mul(part).mul(fact.omega, -mpq_class(omega_exp));
        if (with_sqrt_d) r.mul(D, -half);
        return r;
    };

    MagnitudeProduct r_total = ratio_of(fact.total, fact.L, fact.twisted);
    MagnitudeProduct r_phi = ratio_of(fact.phi_part, phi_L, false);
    MagnitudeProduct r_psi = ratio_of(fact.psi_part, fact.L - phi_L, fact.twisted);

    MagnitudeReport rep{};
    rep.pass = log_within(r_total, -2, 2, policy) && log_within(r_phi, -2, 2, policy) &&
               log_within(r_psi, -2, 2, policy);
    rep.total_ratio = std::exp(r_total.log_enclosure(96).midpoint().to_double());
    rep.phi_ratio = std::exp(r_phi.log_enclosure(96).midpoint().to_double());
    rep.psi_ratio = std::exp(r_psi.log_enclosure(96).midpoint().to_double());
    return rep;
}

}  // namespace evdiv
