#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "evdiv/magnitude.hpp"
#include "evdiv/numtheory.hpp"
#include "evdiv/qfield.hpp"
#include "evdiv/tracefact.hpp"

namespace evdiv {

enum class ConstructMode { Symmetric, TwistedP, TwistedQ, Strong };
enum class TwistedSide { P, Q };

const char* to_string(ConstructMode mode);
ConstructMode construct_mode_from_string(const std::string& s);

// All parameters fixed by a construction run. The certificate concerns
// alpha_int = A * alpha; divisibility statements transfer to alpha via
// the scaled denominator sequence A * Q.
struct ConstructionParams {
    QuadElem alpha;
    mpz_class A;
    QuadElem alpha_int;
    QuadElem zeta;
    mpq_class eps;  // 0 in strong mode
    mpz_class L, Lp;
    std::vector<mpz_class> L_primes, Lp_primes;
    mpz_class M, m1, m2;
    mpz_class n, N;
    ConstructMode mode;
    bool small_n = false;  // strong mode: magnitude window not yet certified
};

struct SplitPair {
    mpz_class d1, d2;  // d1 * d2 equals the split integer exactly
};

// Decimal-scientific endpoints of a real enclosure.
struct RealEnclosure {
    std::string lo, hi;
    mpfr_prec_t precision_bits = 0;
    bool empty() const { return lo.empty(); }
};

struct CheckSet {
    bool approx = false;
    bool split_P = false;
    bool split_Q = false;
    bool q_magnitude = false;
    bool all() const { return approx && split_P && split_Q && q_magnitude; }
};

struct ApproxCertificate {
    ConstructionParams params;
    mpz_class P, Q;
    SplitPair P_split, Q_split;
    RealEnclosure error;  // |alpha_int * Q - P|; empty when deserialized
    CheckSet checks;

    // Error-decay exponent claimed for |alpha_int * Q - P| <= c / |Q|^x.
    mpq_class claimed_exponent() const;
};

struct VerifyReport {
    CheckSet checks;
    bool small_n = false;  // strong magnitude bound skipped below threshold
    std::string detail;    // notes on failed checks
    bool all_pass() const { return checks.all(); }
};

struct ConstructOptions {
    PrecisionPolicy precision = {};
    mpz_class block_budget = 10000000;  // warn threshold for L * L'
};

struct SquareDecomposition {
    mpz_class A;
    QuadElem beta;  // beta^2 = A * alpha, beta integral
};

// Smallest n >= 1 making the two trace-ratio inequalities and the
// error-budget inequality hold; decided in log-space. The twisted modes
// carry an extra factor D in the error budget (the twisted trace scales
// both numerator and denominator by sqrt(D)).
mpz_class choose_n(const QuadElem& alpha_int, const QuadElem& zeta, const mpz_class& L,
                   const mpz_class& Lp, const mpz_class& M, const mpz_class& m1,
                   const mpz_class& m2, const mpq_class& eps, bool twisted,
                   const PrecisionPolicy& policy = {});

// Even-divisibility constructions: P and Q are (twisted) traces of L-th
// and L'-th powers, split by phi_psi. Requires alpha > 0 irrational and
// 0 < eps < 1/2.
ApproxCertificate symmetric_construct(const QuadElem& alpha, const mpq_class& eps,
                                      const ConstructOptions& opts = {});
// Same pipeline over twisted traces with the chosen side's block set to 2
// (strongly divisible on that side). Both sides cannot be 2: M and M+1
// cannot both be even.
ApproxCertificate twisted_construct(const QuadElem& alpha, const mpq_class& eps, TwistedSide side,
                                    const ConstructOptions& opts = {});

// alpha in Q_{>0} * (K^x)^2, i.e. N(alpha) a rational square and
// tr(alpha) > 0.
bool square_class_test(const QuadElem& alpha);

// Finds A, beta with beta^2 = A * alpha exactly (beta integral). The
// returned pair is valid, not canonical; reduction is best-effort.
SquareDecomposition square_decompose(const QuadElem& alpha);

// Strongly-divisible certificates P_n = ttr(beta zeta^n) tr(beta zeta^n),
// Q_n = ttr(zeta^n) tr(zeta^n) for n in [n_from, n_to]. Product and error
// identities are asserted exactly during construction.
std::vector<ApproxCertificate> strong_sequence(const QuadElem& alpha, const mpz_class& n_from,
                                               const mpz_class& n_to,
                                               const ConstructOptions& opts = {});

// Independent re-check of a certificate's claims from its integers alone:
// split products, the approximation bound, the divisor lower bounds, and
// the magnitude of Q. Never throws on a failed check.
VerifyReport verify_certificate(const ApproxCertificate& cert, const PrecisionPolicy& policy = {});

// Diagnostic factorization reports for a certificate's two sides
// (recomputed from params).
struct CertificateDiagnostics {
    TraceFactorization fact_P;
    TraceFactorization fact_Q;
    MagnitudeReport mag_P;
    MagnitudeReport mag_Q;
};
CertificateDiagnostics explain_certificate(const ApproxCertificate& cert,
                                           const PrecisionPolicy& policy = {});

}  // namespace evdiv
