#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "evdiv/bigfloat.hpp"
#include "evdiv/qfield.hpp"

namespace evdiv {

struct SpectrumOptions {
    // Requested working precision; the effective precision also satisfies
    // the adequacy rule 2*log2(lambda_max) + 64 unless the rule is
    // disabled (testing hook).
    mpfr_prec_t precision_bits = 192;
    bool enforce_precision_rule = true;
    // Collision between adjacent level enclosures retries at doubled
    // precision up to this cap.
    mpfr_prec_t precision_cap = mpfr_prec_t(1) << 24;
    int workers = 1;
};

// One level alpha*m^2 + n^2. `value` is the round-to-nearest evaluation
// at the working precision; the driver separately certifies that
// adjacent enclosures do not overlap.
struct SpectrumLevel {
    BigFloat value;
    mpz_class m, n;
};

struct GapRecord {
    std::size_t index = 0;  // gap between levels index and index+1 (1-based)
    BigFloat lambda_i, lambda_next, gap;
    mpz_class m1, n1, m2, n2;
};

struct GapCheckpoint {
    std::size_t N = 0;
    BigFloat delta_min;
    GapRecord argmin;
};

struct ProfileResult {
    std::vector<GapCheckpoint> checkpoints;
    mpfr_prec_t precision_used = 0;
};

// First `count` levels in strictly increasing order via a k-way merge
// over the per-m generators, opened lazily. Requires alpha > 0
// irrational. Deterministic; independent of the worker count.
std::vector<SpectrumLevel> enumerate_levels(const QuadElem& alpha, std::size_t count,
                                            const SpectrumOptions& opts = {});

// Single pass maintaining the running minimal gap, recorded at each
// checkpoint (checkpoints strictly increasing, >= 2). Argmin ties keep
// the smallest index.
ProfileResult min_gap_profile(const QuadElem& alpha, const std::vector<std::size_t>& checkpoints,
                              const SpectrumOptions& opts = {});

// lambda_N * pi / (4 sqrt(alpha) N); approaches 1 as N grows.
double weyl_check(const QuadElem& alpha, std::size_t N, const SpectrumOptions& opts = {});

}  // namespace evdiv
