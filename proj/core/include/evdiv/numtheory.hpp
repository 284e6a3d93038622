#pragma once

#include <gmpxx.h>

#include <vector>

namespace evdiv {

// Distinct odd primes with their product L and the exact ratio phi(L)/L.
struct PrimeBlock {
    std::vector<mpz_class> primes;
    mpz_class product;
    mpq_class totient_ratio;
};

struct BlockPair {
    PrimeBlock L;
    PrimeBlock Lp;
    mpq_class eps;
    bool budget_exceeded = false;  // L * L' above the advisory cost budget
};

struct CrtChoice {
    mpz_class M;   // smallest positive with L | M+1 and L' | M
    mpz_class m1;  // (M+1)/L
    mpz_class m2;  // M/L'
};

// Trial-division factorization; inputs here are small square-free
// products, so nothing fancier is warranted.
std::vector<std::pair<mpz_class, unsigned>> factorize(const mpz_class& n);

int mobius(const mpz_class& n);
mpz_class euler_phi(const mpz_class& n);

// Greedy disjoint block selection: scan odd primes in order, include one
// iff the running product of (1 - 1/p) stays above 1/2, stop once it
// lands inside (1/2, 1/2 + eps); then repeat on the unused odd primes.
// Requires 0 < eps < 1/2.
BlockPair select_blocks(const mpq_class& eps, const mpz_class& budget = 10000000);

// CRT choice of M in [1, L*L'] with M = -1 (mod L), M = 0 (mod L').
// Requires gcd(L, L') = 1.
CrtChoice crt_smallest_M(const mpz_class& L, const mpz_class& Lp);

}  // namespace evdiv
