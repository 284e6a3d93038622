#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace evdiv {

// RAII wrapper around mpfr_t. Every operation states its rounding mode;
// the destination's precision is fixed at construction.
class BigFloat {
  public:
    explicit BigFloat(mpfr_prec_t prec = 64);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

    void set_zero() { mpfr_set_zero(v_, +1); }
    void set(const BigFloat& a, mpfr_rnd_t r) { mpfr_set(v_, a.v_, r); }
    void set_q(const mpq_class& q, mpfr_rnd_t r) { mpfr_set_q(v_, q.get_mpq_t(), r); }
    void set_z(const mpz_class& z, mpfr_rnd_t r) { mpfr_set_z(v_, z.get_mpz_t(), r); }
    void set_ui(unsigned long u, mpfr_rnd_t r) { mpfr_set_ui(v_, u, r); }
    void set_d(double d, mpfr_rnd_t r) { mpfr_set_d(v_, d, r); }

    void add(const BigFloat& a, const BigFloat& b, mpfr_rnd_t r) { mpfr_add(v_, a.v_, b.v_, r); }
    void sub(const BigFloat& a, const BigFloat& b, mpfr_rnd_t r) { mpfr_sub(v_, a.v_, b.v_, r); }
    void mul(const BigFloat& a, const BigFloat& b, mpfr_rnd_t r) { mpfr_mul(v_, a.v_, b.v_, r); }
    void div(const BigFloat& a, const BigFloat& b, mpfr_rnd_t r) { mpfr_div(v_, a.v_, b.v_, r); }
    void add_z(const BigFloat& a, const mpz_class& z, mpfr_rnd_t r) {
        mpfr_add_z(v_, a.v_, z.get_mpz_t(), r);
    }
    void mul_z(const BigFloat& a, const mpz_class& z, mpfr_rnd_t r) {
        mpfr_mul_z(v_, a.v_, z.get_mpz_t(), r);
    }
    void mul_q(const BigFloat& a, const mpq_class& q, mpfr_rnd_t r) {
        mpfr_mul_q(v_, a.v_, q.get_mpq_t(), r);
    }
    void sqrt(const BigFloat& a, mpfr_rnd_t r) { mpfr_sqrt(v_, a.v_, r); }
    void sqrt_z(const mpz_class& z, mpfr_rnd_t r) {
        mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);  // exact: z fits well below prec in our uses
        mpfr_sqrt(v_, v_, r);
    }
    void log(const BigFloat& a, mpfr_rnd_t r) { mpfr_log(v_, a.v_, r); }
    void neg(const BigFloat& a, mpfr_rnd_t r) { mpfr_neg(v_, a.v_, r); }
    void abs(const BigFloat& a, mpfr_rnd_t r) { mpfr_abs(v_, a.v_, r); }
    void pi(mpfr_rnd_t r) { mpfr_const_pi(v_, r); }

    int sgn() const { return mpfr_sgn(v_); }
    int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Exponent e with 2^(e-1) <= |x| < 2^e. Only valid for nonzero finite values.
    long exp2() const { return static_cast<long>(mpfr_get_exp(v_)); }

    // Decimal scientific form, round-trippable at this precision when digits=0.
    std::string str(size_t digits = 0) const;

    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

  private:
    mpfr_t v_;
};

// Closed interval [lo, hi] of BigFloats sharing one precision. All
// operations round lo down and hi up, so enclosures are preserved.
struct Interval {
    BigFloat lo, hi;

    explicit Interval(mpfr_prec_t prec = 64) : lo(prec), hi(prec) {
        lo.set_zero();
        hi.set_zero();
    }

    static Interval exact_q(const mpq_class& q, mpfr_prec_t prec);
    static Interval exact_z(const mpz_class& z, mpfr_prec_t prec);
    static Interval point(const BigFloat& x, mpfr_prec_t prec);

    mpfr_prec_t precision() const { return lo.precision(); }
    bool contains_zero() const { return lo.sgn() <= 0 && hi.sgn() >= 0; }
    bool is_positive() const { return lo.sgn() > 0; }
    bool is_negative() const { return hi.sgn() < 0; }
    // hi - lo rounded up.
    BigFloat width() const;
    BigFloat midpoint() const;
    // True iff this interval lies strictly below o.
    bool strictly_below(const Interval& o) const { return hi.cmp(o.lo) < 0; }
    bool disjoint_from(const Interval& o) const {
        return strictly_below(o) || o.strictly_below(*this);
    }
};

Interval iv_add(const Interval& a, const Interval& b, mpfr_prec_t prec);
Interval iv_sub(const Interval& a, const Interval& b, mpfr_prec_t prec);
Interval iv_mul(const Interval& a, const Interval& b, mpfr_prec_t prec);
Interval iv_neg(const Interval& a, mpfr_prec_t prec);
Interval iv_abs(const Interval& a, mpfr_prec_t prec);
// Multiplication by exact scalars.
Interval iv_mul_q(const Interval& a, const mpq_class& q, mpfr_prec_t prec);
Interval iv_add_z(const Interval& a, const mpz_class& z, mpfr_prec_t prec);
// Requires a.lo >= 0.
Interval iv_sqrt(const Interval& a, mpfr_prec_t prec);
// Natural log of an interval with lo > 0.
Interval iv_log(const Interval& a, mpfr_prec_t prec);
// Enclosure of ln|z| for a nonzero integer.
Interval iv_log_abs_z(const mpz_class& z, mpfr_prec_t prec);
// Enclosure of ln|q| for a nonzero rational.
Interval iv_log_abs_q(const mpq_class& q, mpfr_prec_t prec);

}  // namespace evdiv
