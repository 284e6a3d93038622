#include "evdiv/construct.hpp"

#include <stdexcept>

#include "evdiv/errors.hpp"
#include "evdiv/pell.hpp"

namespace evdiv {

namespace {

mpq_class sqrt_rational(const mpq_class& q) {
    if (q < 0 || !mpz_perfect_square_p(q.get_num().get_mpz_t()) ||
        !mpz_perfect_square_p(q.get_den().get_mpz_t())) {
        throw std::invalid_argument("sqrt_rational: not a rational square");
    }
    mpz_class num, den;
    mpz_sqrt(num.get_mpz_t(), q.get_num().get_mpz_t());
    mpz_sqrt(den.get_mpz_t(), q.get_den().get_mpz_t());
    return mpq_class(num, den);
}

// |alpha_int * Q - P| as an exact field element; the entire cancellation
// lives in this one subtraction, and eval_interval absorbs it adaptively.
QuadElem residual(const QuadElem& alpha_int, const mpz_class& P, const mpz_class& Q) {
    return QuadElem(alpha_int.field(), alpha_int.u() * mpq_class(Q) - mpq_class(P),
                    alpha_int.v() * mpq_class(Q));
}

// Certified |conj(w)/w| <= 1/2 where w = (d2 sqrt(D) + d1) / (2 sqrt(D)),
// reconstructed from a split pair (d1, d2) = (ttr(w), tr(w)). Exact
// equality cannot occur for nonzero splits.
bool half_ratio_certified(const FieldDesc& field, const mpz_class& ttr, const mpz_class& tr,
                          const PrecisionPolicy& policy) {
    QuadElem num(field, mpq_class(-ttr), mpq_class(tr));  // d2 sqrt(D) - d1
    QuadElem den(field, mpq_class(ttr), mpq_class(tr));   // d2 sqrt(D) + d1
    MagnitudeProduct lhs, rhs;
    lhs.mul(num).mul(mpq_class(2));
    rhs.mul(den);
    try {
        return compare_abs(lhs, rhs, policy) != AbsOrder::Greater;
    } catch (const UndecidableError&) {
        return false;
    }
}

bool value_within_half_two(const MagnitudeProduct& prod, const PrecisionPolicy& policy) {
    MagnitudeProduct half, two;
    half.mul(mpq_class(1, 2));
    two.mul(mpq_class(2));
    return compare_abs(prod, half, policy) == AbsOrder::Greater &&
           compare_abs(prod, two, policy) == AbsOrder::Less;
}

RealEnclosure enclose_error(const QuadElem& alpha_int, const mpz_class& P, const mpz_class& Q,
                            mpfr_prec_t display_bits = 192) {
    QuadElem z = residual(alpha_int, P, Q);
    Interval iv = iv_abs(eval_interval(z, display_bits), display_bits);
    return RealEnclosure{iv.lo.str(), iv.hi.str(), display_bits};
}

PrimeBlock block_of_two() {
    PrimeBlock b;
    b.primes = {mpz_class(2)};
    b.product = 2;
    b.totient_ratio = mpq_class(1, 2);
    return b;
}

}  // namespace

const char* to_string(ConstructMode mode) {
    switch (mode) {
        case ConstructMode::Symmetric: return "symmetric";
        case ConstructMode::TwistedP: return "twisted-p";
        case ConstructMode::TwistedQ: return "twisted-q";
        case ConstructMode::Strong: return "strong";
    }
    throw std::logic_error("unknown mode");
}

ConstructMode construct_mode_from_string(const std::string& s) {
    if (s == "symmetric") return ConstructMode::Symmetric;
    if (s == "twisted-p") return ConstructMode::TwistedP;
    if (s == "twisted-q") return ConstructMode::TwistedQ;
    if (s == "strong") return ConstructMode::Strong;
    throw std::invalid_argument("unknown construction mode: " + s);
}

mpq_class ApproxCertificate::claimed_exponent() const {
    if (params.mode == ConstructMode::Strong) return 1;
    return 1 - params.eps;
}

mpz_class choose_n(const QuadElem& alpha_int, const QuadElem& zeta, const mpz_class& L,
                   const mpz_class& Lp, const mpz_class& M, const mpz_class& m1,
                   const mpz_class& m2, const mpq_class& eps, bool twisted,
                   const PrecisionPolicy& policy) {
    QuadElem zbar = zeta.conjugate();
    QuadElem abar = alpha_int.conjugate();
    QuadElem diff = alpha_int - abar;
    mpq_class norm_a = alpha_int.norm();  // nonzero for alpha != 0
    mpq_class budget_const =
        twisted ? mpq_class(4 * alpha_int.field().D()) : mpq_class(4);

    for (mpz_class n = 1; n <= 1000000; ++n) {
        mpz_class N = n * L * Lp;

        // |zeta/conj(zeta)|^(n L') > 2 |conj(a)/a|^(m1), and the mirrored
        // inequality with (n L, m2).
        auto ratio_ok = [&](const mpz_class& zeta_exp, const mpz_class& alpha_exp) {
            MagnitudeProduct lhs, rhs;
            lhs.mul(zeta, mpq_class(zeta_exp)).mul(zbar, -mpq_class(zeta_exp));
            rhs.mul(mpq_class(2)).mul(abar, mpq_class(alpha_exp)).mul(alpha_int,
                                                                      -mpq_class(alpha_exp));
            return compare_abs(lhs, rhs, policy) == AbsOrder::Greater;
        };
        if (!ratio_ok(n * Lp, m1)) continue;
        if (!ratio_ok(n * L, m2)) continue;

        // |zeta|^(eps N) > budget_const * |a - conj(a)| * |N(a)|^M * |a|^(-eps M).
        MagnitudeProduct lhs, rhs;
        lhs.mul(zeta, eps * mpq_class(N));
        rhs.mul(budget_const).mul(diff).mul(norm_a, mpq_class(M)).mul(alpha_int,
                                                                      -eps * mpq_class(M));
        if (compare_abs(lhs, rhs, policy) == AbsOrder::Greater) return n;
    }
    throw std::logic_error("choose_n: no admissible n below 10^6");
}

namespace {

ApproxCertificate build_even(const QuadElem& alpha, const mpq_class& eps, ConstructMode mode,
                             const ConstructOptions& opts) {
    if (eps <= 0 || eps >= mpq_class(1, 2)) {
        throw std::invalid_argument("construction requires 0 < eps < 1/2");
    }
    if (alpha.is_rational()) {
        throw std::invalid_argument("construction requires irrational alpha");
    }
    if (alpha.sign() <= 0) throw std::invalid_argument("construction requires alpha > 0");

    ConstructionParams params{alpha,
                              0,
                              alpha,
                              QuadElem::one(alpha.field()),
                              eps,
                              0,
                              0,
                              {},
                              {},
                              0,
                              0,
                              0,
                              0,
                              0,
                              mode};
    ClearedDenominator cd = clear_denominator(alpha);
    params.A = cd.A;
    params.alpha_int = cd.elem;
    params.zeta = unit_zeta(alpha.field());

    bool twisted = mode != ConstructMode::Symmetric;
    PrimeBlock side_P, side_Q;
    if (mode == ConstructMode::Symmetric) {
        BlockPair bp = select_blocks(eps, opts.block_budget);
        side_P = bp.L;
        side_Q = bp.Lp;
    } else {
        PrimeBlock odd = select_blocks(eps, opts.block_budget).L;
        side_P = (mode == ConstructMode::TwistedP) ? block_of_two() : odd;
        side_Q = (mode == ConstructMode::TwistedQ) ? block_of_two() : odd;
    }
    params.L = side_P.product;
    params.Lp = side_Q.product;
    params.L_primes = side_P.primes;
    params.Lp_primes = side_Q.primes;

    CrtChoice crt = crt_smallest_M(params.L, params.Lp);
    params.M = crt.M;
    params.m1 = crt.m1;
    params.m2 = crt.m2;
    params.n = choose_n(params.alpha_int, params.zeta, params.L, params.Lp, params.M, params.m1,
                        params.m2, eps, twisted, opts.precision);
    params.N = params.n * params.L * params.Lp;

    QuadElem omega_P = pow_int(params.alpha_int, params.m1) *
                       pow_int(params.zeta, params.n * params.Lp);
    QuadElem omega_Q = pow_int(params.alpha_int, params.m2) *
                       pow_int(params.zeta, params.n * params.L);
    TraceFactorization fact_P = phi_psi(omega_P, params.L, twisted);
    TraceFactorization fact_Q = phi_psi(omega_Q, params.Lp, twisted);

    ApproxCertificate cert{std::move(params),
                           fact_P.total,
                           fact_Q.total,
                           SplitPair{fact_P.phi_part, fact_P.psi_part},
                           SplitPair{fact_Q.phi_part, fact_Q.psi_part},
                           {},
                           {}};
    cert.error = enclose_error(cert.params.alpha_int, cert.P, cert.Q);
    cert.checks = verify_certificate(cert, opts.precision).checks;
    return cert;
}

}  // namespace

ApproxCertificate symmetric_construct(const QuadElem& alpha, const mpq_class& eps,
                                      const ConstructOptions& opts) {
    return build_even(alpha, eps, ConstructMode::Symmetric, opts);
}

ApproxCertificate twisted_construct(const QuadElem& alpha, const mpq_class& eps, TwistedSide side,
                                    const ConstructOptions& opts) {
    return build_even(alpha, eps,
                      side == TwistedSide::P ? ConstructMode::TwistedP : ConstructMode::TwistedQ,
                      opts);
}

bool square_class_test(const QuadElem& alpha) {
    if (alpha.is_zero()) throw std::invalid_argument("square_class_test requires alpha != 0");
    if (alpha.trace() <= 0) return false;
    mpq_class n = alpha.norm();
    if (n <= 0) return false;
    return mpz_perfect_square_p(n.get_num().get_mpz_t()) &&
           mpz_perfect_square_p(n.get_den().get_mpz_t());
}

SquareDecomposition square_decompose(const QuadElem& alpha) {
    if (!square_class_test(alpha)) {
        throw std::invalid_argument("square_decompose: alpha is not in Q+ * (K^x)^2");
    }
    const FieldDesc& field = alpha.field();
    const mpz_class& D = field.D();

    // With s = sqrt(N(alpha)): (alpha + s)^2 = (tr(alpha) + 2s) * alpha,
    // by the minimal polynomial of alpha.
    mpq_class s = sqrt_rational(alpha.norm());
    QuadElem beta0 = alpha + QuadElem::rational(field, s);
    mpq_class c = alpha.trace() + 2 * s;
    mpz_class A = c.get_num() * c.get_den();
    QuadElem beta = QuadElem(field, beta0.u() * mpq_class(c.get_den()),
                             beta0.v() * mpq_class(c.get_den()));

    // Clear beta to integrality: (B beta)^2 = B^2 A alpha.
    ClearedDenominator cd = clear_denominator(beta);
    beta = cd.elem;
    A *= cd.A * cd.A;

    // Best-effort reduction: strip primes with f^2 | A and beta/f
    // integral, and absorb a factor D into beta via beta/sqrt(D).
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [f, e] : factorize(A)) {
            while (mpz_divisible_p(A.get_mpz_t(), mpz_class(f * f).get_mpz_t())) {
                QuadElem candidate(field, beta.u() / mpq_class(f), beta.v() / mpq_class(f));
                if (!is_integral(candidate).is_integral) break;
                beta = candidate;
                A /= f * f;
                changed = true;
            }
        }
        if (mpz_divisible_p(A.get_mpz_t(), D.get_mpz_t())) {
            // beta / sqrt(D) = v + (u/D) sqrt(D).
            QuadElem candidate(field, beta.v(), beta.u() / mpq_class(D));
            if (is_integral(candidate).is_integral) {
                beta = candidate;
                A /= D;
                changed = true;
            }
        }
    }

    QuadElem scaled(field, alpha.u() * mpq_class(A), alpha.v() * mpq_class(A));
    if (beta * beta != scaled) throw std::logic_error("square_decompose: identity check failed");
    return SquareDecomposition{A, beta};
}

std::vector<ApproxCertificate> strong_sequence(const QuadElem& alpha, const mpz_class& n_from,
                                               const mpz_class& n_to,
                                               const ConstructOptions& opts) {
    if (n_from < 1 || n_to < n_from) {
        throw std::invalid_argument("strong_sequence requires 1 <= n_from <= n_to");
    }
    SquareDecomposition dec = square_decompose(alpha);
    const FieldDesc& field = alpha.field();
    QuadElem alpha_int = dec.beta * dec.beta;
    QuadElem zeta = unit_zeta(field);
    QuadElem zbar = zeta.conjugate();

    std::vector<ApproxCertificate> out;
    for (mpz_class n = n_from; n <= n_to; ++n) {
        QuadElem zn = pow_int(zeta, n);
        QuadElem w_p = dec.beta * zn;

        // L = 2 twisted factorizations: Phi_2 = tr(w), Psi_2 = ttr(w).
        TraceFactorization fact_P = phi_psi(w_p, 2, true);
        TraceFactorization fact_Q = phi_psi(zn, 2, true);

        ConstructionParams params{alpha,   dec.A, alpha_int, zeta, 0,  2,
                                  2,       {mpz_class(2)},   {mpz_class(2)},
                                  0,       0,     0,         n,    2 * n,
                                  ConstructMode::Strong};

        ApproxCertificate cert{std::move(params),
                               fact_P.total,
                               fact_Q.total,
                               SplitPair{fact_P.psi_part, fact_P.phi_part},
                               SplitPair{fact_Q.psi_part, fact_Q.phi_part},
                               {},
                               {}};

        // Exact error identity: alpha_int Q_n - P_n = sqrt(D) (conj(a) - a) conj(zeta)^(2n).
        QuadElem z = residual(alpha_int, cert.P, cert.Q);
        QuadElem identity =
            ((alpha_int.conjugate() - alpha_int) * pow_int(zbar, 2 * n)).mul_sqrt_d();
        if (z != identity) throw std::logic_error("strong_sequence: error identity failed");

        cert.params.small_n =
            !half_ratio_certified(field, cert.P_split.d1, cert.P_split.d2, opts.precision) ||
            !half_ratio_certified(field, cert.Q_split.d1, cert.Q_split.d2, opts.precision);
        cert.error = enclose_error(alpha_int, cert.P, cert.Q);
        cert.checks = verify_certificate(cert, opts.precision).checks;
        out.push_back(std::move(cert));
    }
    return out;
}

VerifyReport verify_certificate(const ApproxCertificate& cert, const PrecisionPolicy& policy) {
    VerifyReport report;
    const ConstructionParams& p = cert.params;
    const FieldDesc& field = p.alpha.field();
    const mpz_class& D = field.D();
    bool strong = p.mode == ConstructMode::Strong;
    bool twisted = p.mode != ConstructMode::Symmetric;
    auto note = [&report](const std::string& s) {
        if (!report.detail.empty()) report.detail += "; ";
        report.detail += s;
    };

    // Strong mode: the divisor magnitude bounds only apply once
    // |conj(w)/w| <= 1/2 for both sides' base elements, which is decidable
    // from the split integers (d1, d2) = (ttr(w), tr(w)).
    if (strong) {
        report.small_n =
            !half_ratio_certified(field, cert.P_split.d1, cert.P_split.d2, policy) ||
            !half_ratio_certified(field, cert.Q_split.d1, cert.Q_split.d2, policy);
    }

    // (i) + (iii): split products and divisor lower bounds
    // min(|d1|, |d2|) >= e^-4 D^(-1/4) |X|^ex with ex = 1/2 - eps (even)
    // or 1/2 (strong).
    mpq_class ex = strong ? mpq_class(1, 2) : mpq_class(1, 2) - p.eps;
    auto check_split = [&](const mpz_class& X, const SplitPair& split, const char* name) {
        if (split.d1 * split.d2 != X || X == 0) {
            note(std::string(name) + ": split product mismatch");
            return false;
        }
        if (strong && report.small_n) return true;  // bound not claimed yet
        mpz_class mn = std::min(abs(split.d1), abs(split.d2));
        MagnitudeProduct prod;
        prod.mul(mn).mul(D, mpq_class(1, 4)).mul(mpq_class(X), -ex);
        if (!log_at_least(prod, -4, policy)) {
            note(std::string(name) + ": divisor lower bound failed");
            return false;
        }
        return true;
    };
    report.checks.split_P = check_split(cert.P, cert.P_split, "split_P");
    report.checks.split_Q = check_split(cert.Q, cert.Q_split, "split_Q");

    // (ii) approximation bound, recomputed from the certificate integers.
    QuadElem z = residual(p.alpha_int, cert.P, cert.Q);
    if (z.is_zero()) {
        // Only possible for rational alpha_int (strong mode): P/Q = alpha
        // exactly, which satisfies any error bound.
        report.checks.approx = strong;
        if (!strong) note("approx: residual is exactly zero");
    } else if (!strong) {
        // |alpha_int Q - P| <= |Q|^-(1-eps).
        MagnitudeProduct prod;
        prod.mul(z).mul(mpq_class(cert.Q), 1 - p.eps);
        report.checks.approx = log_at_most(prod, 0, policy);
        if (!report.checks.approx) note("approx: error bound exceeded");
    } else {
        // |alpha_int Q - P| <= C / |Q| with C = |a - conj(a)| sqrt(D) e^2.
        QuadElem diff = p.alpha_int - p.alpha_int.conjugate();
        MagnitudeProduct prod;
        prod.mul(z).mul(mpq_class(cert.Q)).mul(diff, -1).mul(D, mpq_class(-1, 2));
        report.checks.approx = log_at_most(prod, 2, policy);
        if (!report.checks.approx) note("approx: error bound exceeded");
    }

    // q_magnitude: |Q| against its expected size, within [1/2, 2].
    {
        MagnitudeProduct prod;
        prod.mul(mpq_class(cert.Q));
        if (strong) {
            prod.mul(D, mpq_class(-1, 2)).mul(p.zeta, -mpq_class(2 * p.n));
        } else {
            prod.mul(p.alpha_int, -mpq_class(p.M)).mul(p.zeta, -mpq_class(p.N));
            if (twisted) prod.mul(D, mpq_class(-1, 2));
        }
        report.checks.q_magnitude = value_within_half_two(prod, policy);
        if (!report.checks.q_magnitude) note("q_magnitude: |Q| outside [1/2, 2] window");
    }
    return report;
}

CertificateDiagnostics explain_certificate(const ApproxCertificate& cert,
                                           const PrecisionPolicy& policy) {
    const ConstructionParams& p = cert.params;
    bool twisted = p.mode != ConstructMode::Symmetric;
    QuadElem omega_P = p.mode == ConstructMode::Strong
                           ? QuadElem(p.alpha.field(), mpq_class(cert.P_split.d2) / 2,
                                      mpq_class(cert.P_split.d1) /
                                          (2 * mpq_class(p.alpha.field().D())))
                           : pow_int(p.alpha_int, p.m1) * pow_int(p.zeta, p.n * p.Lp);
    QuadElem omega_Q = p.mode == ConstructMode::Strong
                           ? pow_int(p.zeta, p.n)
                           : pow_int(p.alpha_int, p.m2) * pow_int(p.zeta, p.n * p.L);
    TraceFactorization fact_P = phi_psi(omega_P, p.L, twisted);
    TraceFactorization fact_Q = phi_psi(omega_Q, p.Lp, twisted);
    return CertificateDiagnostics{fact_P, fact_Q, magnitude_bounds(fact_P, policy),
                                  magnitude_bounds(fact_Q, policy)};
}

}  // namespace evdiv
