#pragma once

#include <gmpxx.h>

#include <variant>
#include <vector>

#include "evdiv/bigfloat.hpp"
#include "evdiv/qfield.hpp"

namespace evdiv {

// Adaptive-precision evaluation policy. Comparisons start at `initial`
// bits and double until they decide or exceed `cap`, at which point an
// UndecidableError is raised (possible exact equality).
struct PrecisionPolicy {
    mpfr_prec_t initial = 128;
    mpfr_prec_t cap = mpfr_prec_t(1) << 20;
};

enum class AbsOrder { Less, Greater };

// Product of powers of magnitudes: prod |base_i|^{e_i}, with nonzero
// QuadElem or rational bases and exact rational exponents. Compared and
// bounded in log-space, so astronomically large powers are never built.
class MagnitudeProduct {
  public:
    MagnitudeProduct() = default;

    MagnitudeProduct& mul(const QuadElem& base, mpq_class exponent = 1);
    MagnitudeProduct& mul(const mpq_class& base, mpq_class exponent = 1);
    MagnitudeProduct& mul(const mpz_class& base, mpq_class exponent = 1);

    // Enclosure of ln(prod |base_i|^{e_i}) at working precision p.
    Interval log_enclosure(mpfr_prec_t p) const;

    // True when every base is rational and every exponent a non-negative
    // integer with a small total bit budget; *value then holds the exact
    // magnitude.
    bool exact_value(mpq_class* value) const;

  private:
    struct Factor {
        std::variant<QuadElem, mpq_class> base;
        mpq_class exponent;
    };
    std::vector<Factor> factors_;
};

// Strict comparison of two magnitude products. Exactly equal rational
// sides raise UndecidableError immediately; irrational ties hit the
// precision cap.
AbsOrder compare_abs(const MagnitudeProduct& a, const MagnitudeProduct& b,
                     const PrecisionPolicy& policy = {});

// |x| vs |y| for field elements; detects |x| = |y| (x = +-y) exactly.
AbsOrder compare_abs(const QuadElem& x, const QuadElem& y, const PrecisionPolicy& policy = {});

// Certifies lo_log <= ln(prod) <= hi_log or its negation; throws
// UndecidableError if an endpoint cannot be resolved within the cap.
bool log_within(const MagnitudeProduct& prod, const mpq_class& lo_log, const mpq_class& hi_log,
                const PrecisionPolicy& policy = {});

// One-sided variants: ln(prod) <= bound / ln(prod) >= bound.
bool log_at_most(const MagnitudeProduct& prod, const mpq_class& bound,
                 const PrecisionPolicy& policy = {});
bool log_at_least(const MagnitudeProduct& prod, const mpq_class& bound,
                  const PrecisionPolicy& policy = {});

}  // namespace evdiv
