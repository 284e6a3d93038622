#pragma once

#include <gmpxx.h>

#include "evdiv/magnitude.hpp"
#include "evdiv/qfield.hpp"

namespace evdiv {

// Decomposition tr(omega^L) = Phi_L(omega) * Psi_L(omega) (or the twisted
// analogue) into two exact integer factors. Phi_L is the Moebius-signed
// product of traces of divisor powers; Psi_L is the cofactor.
struct TraceFactorization {
    QuadElem omega;
    mpz_class L;
    mpz_class total;     // tr(omega^L) or twisted tr(omega^L)
    mpz_class phi_part;
    mpz_class psi_part;
    bool twisted;
};

// Ratios |part| / expected-magnitude, where the expected magnitudes are
// |omega|^L, |omega|^phi(L) and |omega|^(L-phi(L)), with sqrt(D) factors
// on total and Psi in the twisted case. Pass iff every ratio lies in
// [e^-2, e^2], interval-certified.
struct MagnitudeReport {
    bool pass;
    double total_ratio;
    double phi_ratio;
    double psi_ratio;
};

// Exact integer tr(omega^k) / twisted-tr(omega^k). Requires omega
// integral, k >= 1; the twisted variant returns 0 when omega^k is
// rational.
mpz_class trace_power(const QuadElem& omega, const mpz_class& k);
mpz_class twisted_trace_power(const QuadElem& omega, const mpz_class& k);

// Phi computed as a quotient of divisor-trace products with exact
// divisibility asserted; Psi = total / Phi likewise. Preconditions:
// omega integral; L square-free; untwisted needs L odd and tr(omega) != 0;
// twisted needs omega irrational.
TraceFactorization phi_psi(const QuadElem& omega, const mpz_class& L, bool twisted);

// Verifies the e^{+-2} magnitude windows for total, Phi and Psi.
// Requires |conj(omega)/omega| <= 1/2, and L > 1 in the twisted case.
MagnitudeReport magnitude_bounds(const TraceFactorization& fact,
                                 const PrecisionPolicy& policy = {});

}  // namespace evdiv
