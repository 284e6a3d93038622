#include "evdiv/bigfloat.hpp"

#include <cstdio>
#include <cstdlib>
#include <utility>

namespace evdiv {

BigFloat::BigFloat(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, +1);
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

std::string BigFloat::str(size_t digits) const {
    if (digits == 0) {
        // Enough decimal digits to round-trip this precision.
        digits = static_cast<size_t>(static_cast<double>(precision()) * 0.30103) + 3;
    }
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", static_cast<int>(digits), v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

Interval Interval::exact_q(const mpq_class& q, mpfr_prec_t prec) {
    Interval r(prec);
    r.lo.set_q(q, MPFR_RNDD);
    r.hi.set_q(q, MPFR_RNDU);
    return r;
}

Interval Interval::exact_z(const mpz_class& z, mpfr_prec_t prec) {
    Interval r(prec);
    r.lo.set_z(z, MPFR_RNDD);
    r.hi.set_z(z, MPFR_RNDU);
    return r;
}

Interval Interval::point(const BigFloat& x, mpfr_prec_t prec) {
    Interval r(prec);
    r.lo.set(x, MPFR_RNDD);
    r.hi.set(x, MPFR_RNDU);
    return r;
}

BigFloat Interval::width() const {
    BigFloat w(precision());
    w.sub(hi, lo, MPFR_RNDU);
    return w;
}

BigFloat Interval::midpoint() const {
    BigFloat m(precision());
    m.add(lo, hi, MPFR_RNDN);
    BigFloat half(precision());
    half.set_d(0.5, MPFR_RNDN);
    m.mul(m, half, MPFR_RNDN);
    return m;
}

Interval iv_add(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    Interval r(prec);
    r.lo.add(a.lo, b.lo, MPFR_RNDD);
    r.hi.add(a.hi, b.hi, MPFR_RNDU);
    return r;
}

Interval iv_sub(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    Interval r(prec);
    r.lo.sub(a.lo, b.hi, MPFR_RNDD);
    r.hi.sub(a.hi, b.lo, MPFR_RNDU);
    return r;
}

Interval iv_mul(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    // min/max over the four endpoint products, each rounded both ways.
    Interval r(prec);
    BigFloat t(prec);
    bool first = true;
    const BigFloat* as[2] = {&a.lo, &a.hi};
    const BigFloat* bs[2] = {&b.lo, &b.hi};
    for (const BigFloat* x : as) {
        for (const BigFloat* y : bs) {
            t.mul(*x, *y, MPFR_RNDD);
            if (first || t.cmp(r.lo) < 0) r.lo.set(t, MPFR_RNDD);
            t.mul(*x, *y, MPFR_RNDU);
            if (first || t.cmp(r.hi) > 0) r.hi.set(t, MPFR_RNDU);
            first = false;
        }
    }
    return r;
}

Interval iv_neg(const Interval& a, mpfr_prec_t prec) {
    Interval r(prec);
    r.lo.neg(a.hi, MPFR_RNDD);
    r.hi.neg(a.lo, MPFR_RNDU);
    return r;
}

Interval iv_abs(const Interval& a, mpfr_prec_t prec) {
    Interval r(prec);
    if (a.lo.sgn() >= 0) {
        r.lo.set(a.lo, MPFR_RNDD);
        r.hi.set(a.hi, MPFR_RNDU);
    } else if (a.hi.sgn() <= 0) {
        r.lo.neg(a.hi, MPFR_RNDD);
        r.hi.neg(a.lo, MPFR_RNDU);
    } else {
        r.lo.set_zero();
        BigFloat nl(prec);
        nl.neg(a.lo, MPFR_RNDU);
        if (nl.cmp(a.hi) > 0) {
            r.hi.set(nl, MPFR_RNDU);
        } else {
            r.hi.set(a.hi, MPFR_RNDU);
        }
    }
    return r;
}

Interval iv_mul_q(const Interval& a, const mpq_class& q, mpfr_prec_t prec) {
    Interval r(prec);
    if (sgn(q) >= 0) {
        r.lo.mul_q(a.lo, q, MPFR_RNDD);
        r.hi.mul_q(a.hi, q, MPFR_RNDU);
    } else {
        r.lo.mul_q(a.hi, q, MPFR_RNDD);
        r.hi.mul_q(a.lo, q, MPFR_RNDU);
    }
    return r;
}

Interval iv_add_z(const Interval& a, const mpz_class& z, mpfr_prec_t prec) {
    Interval r(prec);
    r.lo.add_z(a.lo, z, MPFR_RNDD);
    r.hi.add_z(a.hi, z, MPFR_RNDU);
    return r;
}

Interval iv_sqrt(const Interval& a, mpfr_prec_t prec) {
    Interval r(prec);
    r.lo.sqrt(a.lo, MPFR_RNDD);
    r.hi.sqrt(a.hi, MPFR_RNDU);
    return r;
}

Interval iv_log(const Interval& a, mpfr_prec_t prec) {
    Interval r(prec);
    r.lo.log(a.lo, MPFR_RNDD);
    r.hi.log(a.hi, MPFR_RNDU);
    return r;
}

Interval iv_log_abs_z(const mpz_class& z, mpfr_prec_t prec) {
    Interval v(prec);
    mpz_class az = abs(z);
    v.lo.set_z(az, MPFR_RNDD);
    v.hi.set_z(az, MPFR_RNDU);
    return iv_log(v, prec);
}

Interval iv_log_abs_q(const mpq_class& q, mpfr_prec_t prec) {
    Interval v(prec);
    mpq_class aq = abs(q);
    v.lo.set_q(aq, MPFR_RNDD);
    v.hi.set_q(aq, MPFR_RNDU);
    return iv_log(v, prec);
}

}  // namespace evdiv
