#pragma once

#include <gmpxx.h>

#include <vector>

#include "evdiv/qfield.hpp"

namespace evdiv {

// Periodic continued fraction of sqrt(D): [a0; period...], with the
// period palindromic up to its last element 2*a0.
struct CFExpansion {
    mpz_class D;
    mpz_class a0;
    std::vector<mpz_class> period;
};

// x^2 - D y^2 = norm with x, y > 0, fundamental (no smaller positive
// solution of the same norm). Verified exactly at construction.
struct PellSolution {
    mpz_class x;
    mpz_class y;
    mpz_class D;
    int norm;  // +1 or -1
};

// Standard integer-only (P,Q) recurrence. Requires D >= 2 square-free.
CFExpansion cf_sqrt(const mpz_class& D);

// Fundamental solution from the convergent at the end of the first
// period; squares the norm -1 solution when +1 is requested and the
// period length is odd. Throws std::domain_error when want_norm = -1 and
// no such solution exists (even period).
PellSolution fundamental_unit_solution(const mpz_class& D, int want_norm);

// zeta = x + y*sqrt(D) from the fundamental +1 solution; N(zeta) = 1 and
// zeta > 1 > |conj(zeta)|.
QuadElem unit_zeta(const FieldDesc& field);

}  // namespace evdiv
