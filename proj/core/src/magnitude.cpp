#include "evdiv/magnitude.hpp"

#include <stdexcept>

#include "evdiv/errors.hpp"

namespace evdiv {

MagnitudeProduct& MagnitudeProduct::mul(const QuadElem& base, mpq_class exponent) {
    if (base.is_zero()) throw std::invalid_argument("magnitude product: zero base");
    if (base.is_rational()) return mul(base.u(), std::move(exponent));
    factors_.push_back(Factor{base, std::move(exponent)});
    return *this;
}

MagnitudeProduct& MagnitudeProduct::mul(const mpq_class& base, mpq_class exponent) {
    if (base == 0) throw std::invalid_argument("magnitude product: zero base");
    mpq_class b = abs(base);
    if (b != 1 && exponent != 0) factors_.push_back(Factor{std::move(b), std::move(exponent)});
    return *this;
}

MagnitudeProduct& MagnitudeProduct::mul(const mpz_class& base, mpq_class exponent) {
    return mul(mpq_class(base), std::move(exponent));
}

Interval MagnitudeProduct::log_enclosure(mpfr_prec_t p) const {
    Interval sum(p);
    for (const Factor& f : factors_) {
        Interval lg(p);
        if (std::holds_alternative<QuadElem>(f.base)) {
            Interval val = eval_interval(std::get<QuadElem>(f.base), p);
            lg = iv_log(iv_abs(val, p), p);
        } else {
            lg = iv_log_abs_q(std::get<mpq_class>(f.base), p);
        }
        sum = iv_add(sum, iv_mul_q(lg, f.exponent, p), p);
    }
    return sum;
}

bool MagnitudeProduct::exact_value(mpq_class* value) const {
    double bits = 0;
    for (const Factor& f : factors_) {
        if (!std::holds_alternative<mpq_class>(f.base)) return false;
        if (f.exponent.get_den() != 1) return false;
        const mpq_class& b = std::get<mpq_class>(f.base);
        double sz = static_cast<double>(mpz_sizeinbase(b.get_num().get_mpz_t(), 2) +
                                        mpz_sizeinbase(b.get_den().get_mpz_t(), 2));
        bits += std::abs(f.exponent.get_num().get_d()) * sz;
        if (bits > 1 << 16) return false;
    }
    mpq_class acc = 1;
    for (const Factor& f : factors_) {
        const mpq_class& b = std::get<mpq_class>(f.base);
        mpz_class e = f.exponent.get_num();
        mpq_class powed;
        bool invert = e < 0;
        mpz_class ae = abs(e);
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), b.get_num().get_mpz_t(), ae.get_ui());
        mpz_pow_ui(den.get_mpz_t(), b.get_den().get_mpz_t(), ae.get_ui());
        powed = mpq_class(num, den);
        powed.canonicalize();
        if (invert) powed = 1 / powed;
        acc *= powed;
    }
    *value = acc;
    return true;
}

AbsOrder compare_abs(const MagnitudeProduct& a, const MagnitudeProduct& b,
                     const PrecisionPolicy& policy) {
    mpq_class va, vb;
    if (a.exact_value(&va) && b.exact_value(&vb)) {
        int c = cmp(va, vb);
        if (c == 0) throw UndecidableError("compare_abs: magnitudes exactly equal");
        return c < 0 ? AbsOrder::Less : AbsOrder::Greater;
    }
    for (mpfr_prec_t p = policy.initial;; p *= 2) {
        Interval la = a.log_enclosure(p);
        Interval lb = b.log_enclosure(p);
        if (la.strictly_below(lb)) return AbsOrder::Less;
        if (lb.strictly_below(la)) return AbsOrder::Greater;
        if (p > policy.cap) {
            throw UndecidableError("compare_abs: undecidable at precision cap");
        }
    }
}

AbsOrder compare_abs(const QuadElem& x, const QuadElem& y, const PrecisionPolicy& policy) {
    if (x == y || x == -y) {
        throw UndecidableError("compare_abs: magnitudes exactly equal");
    }
    if (x.is_rational() && y.is_rational()) {
        int c = cmp(abs(x.u()), abs(y.u()));
        if (c == 0) throw UndecidableError("compare_abs: magnitudes exactly equal");
        return c < 0 ? AbsOrder::Less : AbsOrder::Greater;
    }
    for (mpfr_prec_t p = policy.initial;; p *= 2) {
        Interval ax = iv_abs(eval_interval(x, p), p);
        Interval ay = iv_abs(eval_interval(y, p), p);
        if (ax.strictly_below(ay)) return AbsOrder::Less;
        if (ay.strictly_below(ax)) return AbsOrder::Greater;
        if (p > policy.cap) {
            throw UndecidableError("compare_abs: undecidable at precision cap");
        }
    }
}

bool log_within(const MagnitudeProduct& prod, const mpq_class& lo_log, const mpq_class& hi_log,
                const PrecisionPolicy& policy) {
    for (mpfr_prec_t p = policy.initial;; p *= 2) {
        Interval lg = prod.log_enclosure(p);
        bool above_lo = mpfr_cmp_q(lg.lo.raw(), lo_log.get_mpq_t()) >= 0;
        bool below_hi = mpfr_cmp_q(lg.hi.raw(), hi_log.get_mpq_t()) <= 0;
        if (above_lo && below_hi) return true;
        if (mpfr_cmp_q(lg.hi.raw(), lo_log.get_mpq_t()) < 0) return false;
        if (mpfr_cmp_q(lg.lo.raw(), hi_log.get_mpq_t()) > 0) return false;
        if (p > policy.cap) {
            throw UndecidableError("log_within: undecidable at precision cap");
        }
    }
}

bool log_at_most(const MagnitudeProduct& prod, const mpq_class& bound,
                 const PrecisionPolicy& policy) {
    for (mpfr_prec_t p = policy.initial;; p *= 2) {
        Interval lg = prod.log_enclosure(p);
        if (mpfr_cmp_q(lg.hi.raw(), bound.get_mpq_t()) <= 0) return true;
        if (mpfr_cmp_q(lg.lo.raw(), bound.get_mpq_t()) > 0) return false;
        if (p > policy.cap) {
            throw UndecidableError("log_at_most: undecidable at precision cap");
        }
    }
}

bool log_at_least(const MagnitudeProduct& prod, const mpq_class& bound,
                  const PrecisionPolicy& policy) {
    for (mpfr_prec_t p = policy.initial;; p *= 2) {
        Interval lg = prod.log_enclosure(p);
        if (mpfr_cmp_q(lg.lo.raw(), bound.get_mpq_t()) >= 0) return true;
        if (mpfr_cmp_q(lg.hi.raw(), bound.get_mpq_t()) < 0) return false;
        if (p > policy.cap) {
            throw UndecidableError("log_at_least: undecidable at precision cap");
        }
    }
}

}  // namespace evdiv
