#include "evdiv/qfield.hpp"

#include <cctype>
#include <stdexcept>

#include "evdiv/errors.hpp"

namespace evdiv {

namespace {

void require_same_field(const QuadElem& a, const QuadElem& b) {
    if (a.field() != b.field()) {
        throw FieldMismatchError("operands lie in different fields Q[sqrt(D)]");
    }
}

}  // namespace

FieldDesc::FieldDesc(mpz_class D) : D_(std::move(D)) {
    if (D_ < 2) throw std::invalid_argument("D must be >= 2");
    // Trial division: any prime appearing twice disqualifies. The leftover
    // cofactor is either 1, prime, or a product of two distinct primes
    // above the bound, except when it is a perfect square.
    mpz_class rest = D_;
    for (unsigned long p = 2; p <= 1000000 && mpz_class(p) * p <= rest; p = (p == 2 ? 3 : p + 2)) {
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
                throw std::invalid_argument("D must be square-free");
            }
        }
    }
    if (rest > 1 && mpz_perfect_square_p(rest.get_mpz_t())) {
        throw std::invalid_argument("D must be square-free");
    }
    half_ = mpz_class(D_ % 4) == 1;
}

mpq_class QuadElem::norm() const {
    return u_ * u_ - v_ * v_ * mpq_class(field_.D());
}

mpq_class QuadElem::trace() const { return 2 * u_; }

mpq_class QuadElem::twisted_trace() const { return 2 * v_ * mpq_class(field_.D()); }

QuadElem QuadElem::mul_sqrt_d() const {
    return QuadElem(field_, v_ * mpq_class(field_.D()), u_);
}

int QuadElem::sign() const {
    int su = sgn(u_), sv = sgn(v_);
    if (sv == 0) return su;
    if (su == 0) return sv;
    if (su == sv) return su;
    // Signs differ: |u| vs |v|*sqrt(D) decides, compared via squares.
    int c = cmp(u_ * u_, v_ * v_ * mpq_class(field_.D()));
    if (c == 0) return 0;  // unreachable: sqrt(D) is irrational
    return c > 0 ? su : sv;
}

QuadElem operator+(const QuadElem& a, const QuadElem& b) {
    require_same_field(a, b);
    return QuadElem(a.field_, a.u_ + b.u_, a.v_ + b.v_);
}

QuadElem operator-(const QuadElem& a, const QuadElem& b) {
    require_same_field(a, b);
    return QuadElem(a.field_, a.u_ - b.u_, a.v_ - b.v_);
}

QuadElem operator*(const QuadElem& a, const QuadElem& b) {
    require_same_field(a, b);
    mpq_class D(a.field_.D());
    return QuadElem(a.field_, a.u_ * b.u_ + a.v_ * b.v_ * D, a.u_ * b.v_ + a.v_ * b.u_);
}

QuadElem operator/(const QuadElem& a, const QuadElem& b) {
    require_same_field(a, b);
    if (b.is_zero()) throw std::domain_error("division by zero in Q[sqrt(D)]");
    QuadElem num = a * b.conjugate();
    mpq_class n = b.norm();
    return QuadElem(a.field_, num.u_ / n, num.v_ / n);
}

QuadElem pow_int(const QuadElem& x, const mpz_class& k) {
    if (k < 0) throw std::invalid_argument("pow_int requires k >= 0");
    QuadElem acc = QuadElem::one(x.field());
    if (k == 0) return acc;
    QuadElem base = x;
    size_t nbits = mpz_sizeinbase(k.get_mpz_t(), 2);
    for (size_t i = 0; i < nbits; ++i) {
        if (mpz_tstbit(k.get_mpz_t(), i)) acc = acc * base;
        if (i + 1 < nbits) base = base * base;
    }
    return acc;
}

IntegralityWitness is_integral(const QuadElem& x) {
    mpq_class t = x.trace();
    mpq_class n = x.norm();
    bool integral = t.get_den() == 1 && n.get_den() == 1;
    return IntegralityWitness{x, integral, std::move(t), std::move(n)};
}

ClearedDenominator clear_denominator(const QuadElem& x) {
    if (x.is_zero()) throw std::invalid_argument("clear_denominator requires x != 0");
    mpz_class A = lcm(x.u().get_den(), x.v().get_den());
    QuadElem scaled = QuadElem(x.field(), x.u() * mpq_class(A), x.v() * mpq_class(A));
    // Z[sqrt(D)] has index 1 or 2 in O_K, so at most one factor of 2 can
    // come off the coordinate-denominator lcm, and only when D = 1 (mod 4).
    if (x.field().has_half_integers() && mpz_even_p(A.get_mpz_t())) {
        mpz_class A2 = A / 2;
        QuadElem half(x.field(), x.u() * mpq_class(A2), x.v() * mpq_class(A2));
        if (is_integral(half).is_integral) return {A2, half};
    }
    return {A, scaled};
}

Interval eval_interval(const QuadElem& x, mpfr_prec_t precision_bits) {
    if (precision_bits < 32) throw std::invalid_argument("eval_interval requires >= 32 bits");
    if (x.is_zero()) return Interval(precision_bits);
    if (x.is_rational()) return Interval::exact_q(x.u(), precision_bits);

    // Work at increasing internal precision until the relative width
    // obligation is met; cancellation between u and v*sqrt(D) can demand
    // more than the nominal precision.
    for (mpfr_prec_t p = precision_bits + 16;; p *= 2) {
        Interval sq(p);
        sq.lo.sqrt_z(x.field().D(), MPFR_RNDD);
        sq.hi.sqrt_z(x.field().D(), MPFR_RNDU);
        Interval val = iv_mul_q(sq, x.v(), p);
        Interval uq = Interval::exact_q(x.u(), p);
        val = iv_add(val, uq, p);
        if (!val.contains_zero()) {
            BigFloat w = val.width();
            long e_min = std::min(val.lo.exp2(), val.hi.exp2());
            // |x| >= 2^(e_min - 1), so ceil(log2|x|) >= e_min - 1.
            if (w.is_zero() || w.exp2() <= e_min - 1 + 2 - precision_bits) {
                Interval out(precision_bits);
                out.lo.set(val.lo, MPFR_RNDD);
                out.hi.set(val.hi, MPFR_RNDU);
                return out;
            }
        }
        if (p > (mpfr_prec_t(1) << 30)) {
            throw UndecidableError("eval_interval: precision runaway (is the value zero?)");
        }
    }
}

std::string format_quad(const QuadElem& x) {
    mpz_class d = lcm(x.u().get_den(), x.v().get_den());
    mpz_class a = mpz_class(x.u() * mpq_class(d));
    mpz_class b = mpz_class(x.v() * mpq_class(d));
    std::string s = a.get_str() + "/" + d.get_str();
    if (b >= 0) {
        s += " + " + b.get_str();
    } else {
        s += " - " + mpz_class(-b).get_str();
    }
    s += "/" + d.get_str() + "*sqrt(" + x.field().D().get_str() + ")";
    return s;
}

namespace {

// Recursive-descent helpers for the "a/d + b/d*sqrt(D)" grammar.
struct Cursor {
    const std::string& s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool consume(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool consume_word(const char* w) {
        skip_ws();
        size_t j = i;
        for (const char* p = w; *p; ++p, ++j) {
            if (j >= s.size() || s[j] != *p) return false;
        }
        i = j;
        return true;
    }
    mpz_class integer() {
        skip_ws();
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw std::invalid_argument("expected integer in quadratic element");
        return mpz_class(s.substr(start, i - start));
    }
};

// term := rational ['*' sqrt] | sqrt, where sqrt := "sqrt(" integer ")".
// Returns (coefficient, is_sqrt_term).
std::pair<mpq_class, bool> parse_term(Cursor& c, const FieldDesc& field) {
    if (c.consume_word("sqrt")) {
        if (!c.consume('(')) throw std::invalid_argument("expected '(' after sqrt");
        mpz_class d = c.integer();
        if (!c.consume(')')) throw std::invalid_argument("expected ')' after sqrt argument");
        if (d != field.D()) throw std::invalid_argument("sqrt argument does not match field D");
        return {mpq_class(1), true};
    }
    mpz_class num = c.integer();
    mpq_class coeff(num);
    if (c.consume('/')) {
        mpz_class den = c.integer();
        if (den == 0) throw std::invalid_argument("zero denominator");
        coeff = mpq_class(num, den);
        coeff.canonicalize();
    }
    bool is_sqrt = false;
    if (c.consume('*')) {
        if (!c.consume_word("sqrt") || !c.consume('(')) {
            throw std::invalid_argument("expected sqrt(D) after '*'");
        }
        mpz_class d = c.integer();
        if (!c.consume(')')) throw std::invalid_argument("expected ')' after sqrt argument");
        if (d != field.D()) throw std::invalid_argument("sqrt argument does not match field D");
        is_sqrt = true;
    }
    return {coeff, is_sqrt};
}

}  // namespace

QuadElem parse_quad(const std::string& text, const FieldDesc& field) {
    Cursor c{text};
    mpq_class u = 0, v = 0;
    bool first = true;
    while (!c.eof()) {
        int sign = 1;
        if (c.consume('+')) {
            if (first) { /* unary plus */ }
        } else if (c.consume('-')) {
            sign = -1;
        } else if (!first) {
            throw std::invalid_argument("expected '+' or '-' between terms");
        }
        auto [coeff, is_sqrt] = parse_term(c, field);
        if (sign < 0) coeff = -coeff;
        if (is_sqrt) {
            v += coeff;
        } else {
            u += coeff;
        }
        first = false;
    }
    if (first) throw std::invalid_argument("empty quadratic element");
    return QuadElem(field, u, v);
}

}  // namespace evdiv
