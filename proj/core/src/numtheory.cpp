#include "evdiv/numtheory.hpp"

#include <stdexcept>

namespace evdiv {

std::vector<std::pair<mpz_class, unsigned>> factorize(const mpz_class& n) {
    if (n < 1) throw std::invalid_argument("factorize requires n >= 1");
    std::vector<std::pair<mpz_class, unsigned>> out;
    mpz_class rest = n;
    mpz_class p = 2;
    while (p * p <= rest) {
        if (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
            unsigned e = 0;
            while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
                rest /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
        p = (p == 2) ? mpz_class(3) : mpz_class(p + 2);
    }
    if (rest > 1) out.emplace_back(rest, 1);
    return out;
}

int mobius(const mpz_class& n) {
    auto fac = factorize(n);
    for (const auto& [p, e] : fac) {
        if (e > 1) return 0;
    }
    return (fac.size() % 2 == 0) ? 1 : -1;
}

mpz_class euler_phi(const mpz_class& n) {
    mpz_class phi = n;
    for (const auto& [p, e] : factorize(n)) {
        phi = phi / p * (p - 1);
    }
    return phi;
}

namespace {

// One greedy block over the odd primes not in `used`.
PrimeBlock greedy_block(const mpq_class& eps, const std::vector<mpz_class>& used) {
    mpq_class half(1, 2);
    mpq_class target = half + eps;
    PrimeBlock block;
    block.product = 1;
    block.totient_ratio = 1;
    mpz_class p = 3;
    while (true) {
        bool skip = false;
        for (const mpz_class& q : used) {
            if (q == p) {
                skip = true;
                break;
            }
        }
        if (!skip) {
            mpq_class candidate = block.totient_ratio * mpq_class(p - 1, p);
            candidate.canonicalize();
            if (candidate > half) {
                block.primes.push_back(p);
                block.product *= p;
                block.totient_ratio = candidate;
                if (block.totient_ratio < target) return block;
            }
        }
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    }
}

}  // namespace

BlockPair select_blocks(const mpq_class& eps, const mpz_class& budget) {
    if (eps <= 0 || eps >= mpq_class(1, 2)) {
        throw std::invalid_argument("select_blocks requires 0 < eps < 1/2");
    }
    BlockPair pair;
    pair.eps = eps;
    pair.L = greedy_block(eps, {});
    pair.Lp = greedy_block(eps, pair.L.primes);
    pair.budget_exceeded = pair.L.product * pair.Lp.product > budget;
    return pair;
}

CrtChoice crt_smallest_M(const mpz_class& L, const mpz_class& Lp) {
    if (L < 1 || Lp < 1) throw std::invalid_argument("crt_smallest_M requires positive moduli");
    if (gcd(L, Lp) != 1) throw std::invalid_argument("crt_smallest_M requires coprime moduli");
    mpz_class M;
    if (L == 1) {
        M = Lp;  // only the divisibility by L' binds
    } else {
        // M = Lp * k with Lp * k = -1 (mod L).
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), Lp.get_mpz_t(), L.get_mpz_t()) == 0) {
            throw std::invalid_argument("crt_smallest_M: no inverse (non-coprime moduli)");
        }
        mpz_class k = ((L - 1) * inv) % L;
        M = Lp * k;
    }
    return CrtChoice{M, (M + 1) / L, M / Lp};
}

}  // namespace evdiv
