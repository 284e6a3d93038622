#include "evdiv/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <utility>

#include "evdiv/errors.hpp"

namespace evdiv {

namespace {

struct PrecisionCollision {};

// Per-m generator state: cached base = alpha*m^2 (nearest value plus
// enclosure), advanced by adding n^2.
struct StreamBase {
    BigFloat value;
    Interval enclosure;
    StreamBase(mpfr_prec_t p) : value(p), enclosure(p) {}
};

struct Head {
    BigFloat value;
    Interval enclosure;
    unsigned long m = 0;
    unsigned long n = 0;
    Head(mpfr_prec_t p) : value(p), enclosure(p) {}
};

struct HeadAfter {
    // Min-heap ordering: larger value sinks; ties broken by m so the heap
    // layout is deterministic (true equality is caught at emission).
    bool operator()(const Head& a, const Head& b) const {
        int c = a.value.cmp(b.value);
        if (c != 0) return c > 0;
        return a.m > b.m;
    }
};

StreamBase make_base(const BigFloat& alpha_hat, const Interval& alpha_iv, unsigned long m,
                     mpfr_prec_t p) {
    StreamBase base(p);
    mpz_class m2 = mpz_class(m) * m;
    base.value.mul_z(alpha_hat, m2, MPFR_RNDN);
    base.enclosure.lo.mul_z(alpha_iv.lo, m2, MPFR_RNDD);
    base.enclosure.hi.mul_z(alpha_iv.hi, m2, MPFR_RNDU);
    return base;
}

Head head_of(const StreamBase& base, unsigned long m, unsigned long n, mpfr_prec_t p) {
    Head h(p);
    mpz_class n2 = mpz_class(n) * n;
    h.value.add_z(base.value, n2, MPFR_RNDN);
    h.enclosure.lo.add_z(base.enclosure.lo, n2, MPFR_RNDD);
    h.enclosure.hi.add_z(base.enclosure.hi, n2, MPFR_RNDU);
    h.m = m;
    h.n = n;
    return h;
}

double alpha_to_double(const QuadElem& alpha) {
    Interval iv = eval_interval(alpha, 64);
    return iv.lo.to_double();
}

// One full merge pass at fixed precision. Emits levels through on_level;
// throws PrecisionCollision when two adjacent enclosures overlap.
template <typename F>
void run_once(const QuadElem& alpha, std::size_t count, mpfr_prec_t p, int workers,
              F&& on_level) {
    // Round-to-nearest evaluation of alpha, a pure function of (alpha, p).
    BigFloat alpha_hat(p);
    {
        BigFloat sq(p);
        sq.sqrt_z(alpha.field().D(), MPFR_RNDN);
        alpha_hat.mul_q(sq, alpha.v(), MPFR_RNDN);
        BigFloat u(p);
        u.set_q(alpha.u(), MPFR_RNDN);
        alpha_hat.add(alpha_hat, u, MPFR_RNDN);
    }
    // eval_interval needs >= 32 bits; a finer alpha interval is still a
    // valid enclosure for low-precision runs (testing hook).
    Interval alpha_iv = eval_interval(alpha, std::max<mpfr_prec_t>(p, 64));

    // Pre-size the base cache from the expected lambda range; misses are
    // filled on demand.
    double ad = alpha_to_double(alpha);
    double lam_est = 4.0 * std::sqrt(ad) / 3.14159265358979 * static_cast<double>(count) * 1.25 +
                     ad + 32.0;
    std::size_t m_upper =
        static_cast<std::size_t>(std::sqrt(std::max(lam_est - 1.0, 1.0) / ad)) + 2;

    std::vector<StreamBase> bases;
    bases.reserve(m_upper);
    for (std::size_t i = 0; i < m_upper; ++i) bases.emplace_back(p);
    int nworkers = std::max(1, workers);
    if (nworkers == 1 || m_upper < 64) {
        for (std::size_t i = 0; i < m_upper; ++i) {
            bases[i] = make_base(alpha_hat, alpha_iv, static_cast<unsigned long>(i + 1), p);
        }
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < nworkers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = static_cast<std::size_t>(w); i < m_upper;
                     i += static_cast<std::size_t>(nworkers)) {
                    bases[i] =
                        make_base(alpha_hat, alpha_iv, static_cast<unsigned long>(i + 1), p);
                }
            });
        }
        for (auto& t : pool) t.join();
    }
    auto base_for = [&](unsigned long m) -> const StreamBase& {
        while (bases.size() < m) {
            bases.push_back(make_base(alpha_hat, alpha_iv,
                                      static_cast<unsigned long>(bases.size() + 1), p));
        }
        return bases[m - 1];
    };

    std::vector<Head> heap;
    HeadAfter cmp;
    unsigned long next_m = 1;
    Head next_head = head_of(base_for(1), 1, 1, p);

    Interval prev_enclosure(p);
    bool have_prev = false;

    for (std::size_t emitted = 0; emitted < count;) {
        // Open streams while the next unopened one could hold the minimum.
        while (heap.empty() || next_head.value.cmp(heap.front().value) <= 0) {
            heap.push_back(next_head);
            std::push_heap(heap.begin(), heap.end(), cmp);
            ++next_m;
            next_head = head_of(base_for(next_m), next_m, 1, p);
        }
        std::pop_heap(heap.begin(), heap.end(), cmp);
        Head top = std::move(heap.back());
        heap.pop_back();

        if (have_prev && !prev_enclosure.strictly_below(top.enclosure)) {
            throw PrecisionCollision{};
        }
        prev_enclosure = top.enclosure;
        have_prev = true;

        SpectrumLevel level{top.value, mpz_class(top.m), mpz_class(top.n)};
        on_level(std::move(level));
        ++emitted;

        heap.push_back(head_of(base_for(top.m), top.m, top.n + 1, p));
        std::push_heap(heap.begin(), heap.end(), cmp);
    }
}

mpfr_prec_t effective_precision(const QuadElem& alpha, std::size_t count,
                                const SpectrumOptions& opts) {
    mpfr_prec_t p = std::max<mpfr_prec_t>(opts.precision_bits, MPFR_PREC_MIN + 2);
    if (opts.enforce_precision_rule) {
        double ad = alpha_to_double(alpha);
        double lam_est =
            4.0 * std::sqrt(ad) / 3.14159265358979 * static_cast<double>(count) * 1.25 + ad + 32.0;
        mpfr_prec_t rule = 2 * static_cast<mpfr_prec_t>(std::ceil(std::log2(lam_est))) + 64;
        p = std::max(p, rule);
    }
    return p;
}

void require_spectrum_alpha(const QuadElem& alpha) {
    if (alpha.is_rational()) {
        throw std::invalid_argument("spectrum requires irrational alpha");
    }
    if (alpha.sign() <= 0) throw std::invalid_argument("spectrum requires alpha > 0");
}

// Retry-at-doubled-precision driver shared by the public entry points.
template <typename Attempt>
mpfr_prec_t with_retries(const QuadElem& alpha, std::size_t count, const SpectrumOptions& opts,
                         Attempt&& attempt) {
    require_spectrum_alpha(alpha);
    for (mpfr_prec_t p = effective_precision(alpha, count, opts);; p *= 2) {
        try {
            attempt(p);
            return p;
        } catch (const PrecisionCollision&) {
            if (p * 2 > opts.precision_cap) {
                throw UndecidableError("spectrum: adjacent levels not separable at precision cap");
            }
        }
    }
}

}  // namespace

std::vector<SpectrumLevel> enumerate_levels(const QuadElem& alpha, std::size_t count,
                                            const SpectrumOptions& opts) {
    std::vector<SpectrumLevel> out;
    with_retries(alpha, count, opts, [&](mpfr_prec_t p) {
        out.clear();
        out.reserve(count);
        run_once(alpha, count, p, opts.workers,
                 [&](SpectrumLevel level) { out.push_back(std::move(level)); });
    });
    return out;
}

ProfileResult min_gap_profile(const QuadElem& alpha, const std::vector<std::size_t>& checkpoints,
                              const SpectrumOptions& opts) {
    if (checkpoints.empty()) throw std::invalid_argument("min_gap_profile: no checkpoints");
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] < 2 || (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
            throw std::invalid_argument(
                "min_gap_profile: checkpoints must be increasing and >= 2");
        }
    }
    std::size_t total = checkpoints.back();

    ProfileResult result;
    result.precision_used = with_retries(alpha, total, opts, [&](mpfr_prec_t p) {
        result.checkpoints.clear();
        std::size_t emitted = 0;
        std::size_t next_checkpoint = 0;
        SpectrumLevel prev{BigFloat(p), 0, 0};
        GapRecord best;
        bool have_best = false;

        run_once(alpha, total, p, opts.workers, [&](SpectrumLevel level) {
            ++emitted;
            if (emitted >= 2) {
                BigFloat gap(p);
                gap.sub(level.value, prev.value, MPFR_RNDN);
                if (!have_best || gap.cmp(best.gap) < 0) {
                    best = GapRecord{emitted - 1, prev.value,  level.value, gap,
                                     prev.m,      prev.n,      level.m,     level.n};
                    have_best = true;
                }
            }
            prev = level;
            while (next_checkpoint < checkpoints.size() &&
                   emitted == checkpoints[next_checkpoint]) {
                result.checkpoints.push_back(GapCheckpoint{emitted, best.gap, best});
                ++next_checkpoint;
            }
        });
    });
    return result;
}

double weyl_check(const QuadElem& alpha, std::size_t N, const SpectrumOptions& opts) {
    if (N < 1) throw std::invalid_argument("weyl_check requires N >= 1");
    BigFloat last(opts.precision_bits);
    mpfr_prec_t used = with_retries(alpha, N, opts, [&](mpfr_prec_t p) {
        run_once(alpha, N, p, opts.workers, [&](SpectrumLevel level) { last = level.value; });
    });

    // ratio = lambda_N * pi / (4 sqrt(alpha) N)
    BigFloat pi(used), denom(used), ratio(used);
    pi.pi(MPFR_RNDN);
    {
        Interval a = eval_interval(alpha, used);
        BigFloat mid = a.midpoint();
        denom.sqrt(mid, MPFR_RNDN);
    }
    BigFloat n_term(used);
    n_term.set_ui(static_cast<unsigned long>(N), MPFR_RNDN);
    denom.mul(denom, n_term, MPFR_RNDN);
    BigFloat four(used);
    four.set_ui(4, MPFR_RNDN);
    denom.mul(denom, four, MPFR_RNDN);
    ratio.mul(last, pi, MPFR_RNDN);
    ratio.div(ratio, denom, MPFR_RNDN);
    return ratio.to_double();
}

}  // namespace evdiv
