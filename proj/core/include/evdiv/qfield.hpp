#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

#include "evdiv/bigfloat.hpp"

namespace evdiv {

// The real quadratic field Q[sqrt(D)], D >= 2 square-free. Construction
// validates square-freeness by trial division plus a perfect-square check
// on the remaining cofactor.
class FieldDesc {
  public:
    explicit FieldDesc(mpz_class D);
    const mpz_class& D() const { return D_; }
    // Whether O_K contains half-integer coordinates, i.e. D = 1 (mod 4).
    bool has_half_integers() const { return half_; }
    bool operator==(const FieldDesc& o) const { return D_ == o.D_; }
    bool operator!=(const FieldDesc& o) const { return D_ != o.D_; }

  private:
    mpz_class D_;
    bool half_;
};

// Element u + v*sqrt(D) of Q[sqrt(D)] under the real embedding with
// sqrt(D) > 0. Coordinates are canonical rationals, so equality is
// coordinate-wise.
class QuadElem {
  public:
    QuadElem(FieldDesc field, mpq_class u, mpq_class v)
        : field_(std::move(field)), u_(std::move(u)), v_(std::move(v)) {}

    static QuadElem rational(FieldDesc field, mpq_class r) {
        return QuadElem(std::move(field), std::move(r), 0);
    }
    static QuadElem sqrt_d(FieldDesc field) { return QuadElem(std::move(field), 0, 1); }
    static QuadElem zero(FieldDesc field) { return QuadElem(std::move(field), 0, 0); }
    static QuadElem one(FieldDesc field) { return QuadElem(std::move(field), 1, 0); }

    const FieldDesc& field() const { return field_; }
    const mpq_class& u() const { return u_; }
    const mpq_class& v() const { return v_; }

    bool is_zero() const { return u_ == 0 && v_ == 0; }
    bool is_rational() const { return v_ == 0; }

    QuadElem conjugate() const { return QuadElem(field_, u_, -v_); }
    mpq_class norm() const;           // u^2 - v^2 D
    mpq_class trace() const;          // 2u
    mpq_class twisted_trace() const;  // (x - conj(x)) * sqrt(D) = 2 v D
    // Multiplication by sqrt(D): (u, v) -> (v*D, u).
    QuadElem mul_sqrt_d() const;

    // Exact sign under the real embedding, decided with rational
    // arithmetic only.
    int sign() const;
    QuadElem abs() const { return sign() >= 0 ? *this : -*this; }

    QuadElem operator-() const { return QuadElem(field_, -u_, -v_); }
    friend QuadElem operator+(const QuadElem& a, const QuadElem& b);
    friend QuadElem operator-(const QuadElem& a, const QuadElem& b);
    friend QuadElem operator*(const QuadElem& a, const QuadElem& b);
    friend QuadElem operator/(const QuadElem& a, const QuadElem& b);
    friend bool operator==(const QuadElem& a, const QuadElem& b) {
        return a.field_ == b.field_ && a.u_ == b.u_ && a.v_ == b.v_;
    }
    friend bool operator!=(const QuadElem& a, const QuadElem& b) { return !(a == b); }

  private:
    FieldDesc field_;
    mpq_class u_, v_;
};

struct IntegralityWitness {
    QuadElem elem;
    bool is_integral;
    mpq_class trace;
    mpq_class norm;
};

struct ClearedDenominator {
    mpz_class A;   // minimal positive integer with A*x integral
    QuadElem elem; // A*x
};

// x^k by binary exponentiation, k >= 0 arbitrary precision. x^0 = 1.
QuadElem pow_int(const QuadElem& x, const mpz_class& k);

// Integral iff trace and norm are both integers; handles half-integer
// coordinates for D = 1 (mod 4).
IntegralityWitness is_integral(const QuadElem& x);

// Minimal positive A with A*x in O_K. Requires x != 0.
ClearedDenominator clear_denominator(const QuadElem& x);

// Enclosure of the real value u + v*sqrt(D). Relative width bounded by
// 2^(-precision_bits + ceil(log2|x|) + 2); exact [0,0] for x = 0.
// Requires precision_bits >= 32.
Interval eval_interval(const QuadElem& x, mpfr_prec_t precision_bits);

// Canonical text form "a/d + b/d*sqrt(D)" with a common denominator d > 0.
std::string format_quad(const QuadElem& x);
// Parses the canonical form as well as shortened ones ("sqrt(2)", "3",
// "1/2+1/2*sqrt(5)", "3+2*sqrt(2)", "-sqrt(2)"). The sqrt argument must
// equal field.D(). Throws std::invalid_argument on malformed input.
QuadElem parse_quad(const std::string& text, const FieldDesc& field);

}  // namespace evdiv
