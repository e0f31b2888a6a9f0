#pragma once

// Exact rational probabilities for loss and conditional-loss events.
//
// Everything here reduces to one question: how many tails does it take for
// the capital product prod_k = (1-delta)^heads * (1+delta)^tails to beat a
// bound? The product is strictly increasing in the tails count, so each
// event is a binomial tail whose starting index is decided by exact rational
// comparisons (the closed forms' validity edges are razor-thin; floating
// logs would misjudge them).

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "model.hpp"

namespace cpdo {

using bigint = boost::multiprecision::cpp_int;
// Arbitrary-precision rational, always in lowest terms with positive
// denominator (cpp_rational normalizes on construction and arithmetic).
using rational = boost::multiprecision::cpp_rational;

// Exact C(n, r) by multiplicative evaluation; every intermediate quotient is
// an integer, so there is no factorial blow-up.
inline bigint binomial(long n, long r) {
    if (r < 0 || r > n) throw validation_error("binomial requires 0 <= r <= n");
    if (r > n - r) r = n - r;
    bigint res = 1;
    for (long i = 1; i <= r; ++i) {
        res *= n - r + i;
        res /= i;
    }
    return res;
}

namespace detail {

inline rational ratpow(const rational& base, long e) {
    using boost::multiprecision::numerator;
    using boost::multiprecision::denominator;
    using boost::multiprecision::pow;
    if (e == 0) return rational(1);
    const unsigned mag = static_cast<unsigned>(e < 0 ? -e : e);
    bigint n = pow(numerator(base), mag);
    bigint d = pow(denominator(base), mag);
    return e > 0 ? rational(n, d) : rational(d, n);
}

// prod over k tosses with i of them tails: (1-delta)^(k-i) * (1+delta)^i.
// Defined for any integer i; exponents may go negative off the [0,k] range.
inline rational product_for_tails(long k, long i, const rational& delta) {
    return ratpow(1 - delta, k - i) * ratpow(1 + delta, i);
}

inline bool beats(const rational& value, const rational& bound, bool strict) {
    return strict ? value > bound : value >= bound;
}

}  // namespace detail

struct ThresholdQuery {
    long k = 0;
    rational delta;
    rational bound;  // e.g. 1 for a net loss, 1+gamma for a cash-out

    void validate() const {
        if (k < 0) throw validation_error("threshold query needs k >= 0");
        if (!(delta > 0 && delta < 1))
            throw validation_error("delta must lie in (0,1)");
        if (!(bound > 0)) throw validation_error("bound must be positive");
    }
};

// Smallest tails count i in [0, k] whose product strictly exceeds the bound
// (k+1 if none does). Monotonicity of the product in i makes this a binary
// search; `strict=false` asks for >= instead, which cash-out events need.
inline long threshold_index(const ThresholdQuery& q, bool strict = true) {
    q.validate();
    long lo = 0, hi = q.k + 1;  // hi is the "no such index" sentinel
    while (lo < hi) {
        const long mid = lo + (hi - lo) / 2;
        if (detail::beats(detail::product_for_tails(q.k, mid, q.delta), q.bound,
                          strict))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

// Exact P(product over k tosses beats `bound`) for tails probability
// 1 - p_heads: a binomial tail starting at the threshold index.
inline rational tail_prob(long k, const rational& delta, const rational& bound,
                          bool strict = true, const rational& p_heads = rational(1, 2)) {
    if (!(p_heads >= 0 && p_heads <= 1))
        throw validation_error("p_heads must lie in [0,1]");
    const long i0 = threshold_index({k, delta, bound}, strict);
    if (i0 > k) return rational(0);
    const rational p_tails = 1 - p_heads;
    if (p_heads == 0) return rational(1);            // all tails, i0 <= k reached
    if (p_tails == 0) return i0 == 0 ? rational(1) : rational(0);
    // term_i = C(k,i) * p_tails^i * p_heads^(k-i), stepped incrementally
    rational term = binomial(k, i0) * detail::ratpow(p_tails, i0) *
                    detail::ratpow(p_heads, k - i0);
    rational sum = term;
    for (long i = i0; i < k; ++i) {
        term *= rational(k - i, i + 1) * p_tails / p_heads;
        sum += term;
    }
    return sum;
}

// P(X_k < 0) = P(prod_k > 1), exact for any k and coin bias.
inline rational prob_loss_exact(long k, const rational& delta = rational(1, 100),
                                const rational& p_heads = rational(1, 2)) {
    if (k < 1) throw validation_error("prob_loss_exact needs k >= 1");
    return tail_prob(k, delta, 1, /*strict=*/true, p_heads);
}

enum class Parity { even, odd };

// Fair-coin closed forms at delta = 1/100:
//   P(X_{2m} < 0)  = 1/2 - C(2m,m)/2^(2m+1)   for 1 <= m <= 199
//   P(X_{2m+1} < 0) = 1/2                      for 0 <= m <= 99
// Beyond those ranges the tails threshold stops being m+1 and the formulas
// are simply wrong, so out-of-range m is rejected (use prob_loss_exact).
inline rational prob_loss_closed(long m, Parity parity) {
    if (parity == Parity::even) {
        if (m < 1 || m > 199)
            throw validation_error(
                "even closed form is valid for 1 <= m <= 199 only");
        return rational(1, 2) - rational(binomial(2 * m, m), bigint(1) << (2 * m + 1));
    }
    if (m < 0 || m > 99)
        throw validation_error("odd closed form is valid for 0 <= m <= 99 only");
    return rational(1, 2);
}

// P(X_k < 0 | X_1 < 0): 1 at k=1; 1/2 at even k=2m (m <= 199);
// 1/2 + C(2m,m)/2^(2m+1) at odd k=2m+1 (1 <= m <= 99).
inline rational cond_prob_given_loss_at_1(long k) {
    if (k == 1) return rational(1);
    if (k >= 2 && k % 2 == 0) {
        const long m = k / 2;
        if (m > 199)
            throw validation_error("conditional closed form needs k = 2m, m <= 199");
        return rational(1, 2);
    }
    if (k >= 3 && k % 2 == 1) {
        const long m = (k - 1) / 2;
        if (m > 99)
            throw validation_error("conditional closed form needs k = 2m+1, m <= 99");
        return rational(1, 2) + rational(binomial(2 * m, m), bigint(1) << (2 * m + 1));
    }
    throw validation_error("k must be >= 1");
}

// P(X_k < 0 | X_2 < 0): conditioning on two opening tails, the event is a
// binomial tail over the remaining k-2 tosses against bound 1/(1+delta)^2.
//   even k=2m: 1/2 + C(2m-2,m-1)/2^(2m-1)
//   odd  k=2m+1: 1/2 + C(2m-1,m-1)/2^(2m-1)
// Note the odd case: a halving argument suggests exactly 1/2, but exhaustive
// enumeration (which this library treats as authoritative; see
// brute_force_prob) gives the extra central-binomial term — e.g. k=3 is 1,
// not 1/2, since two opening tails leave the capital below zero no matter
// what the third toss does. Verified against the generic tail sum over the
// whole validity range.
inline rational cond_prob_given_loss_at_2(long k) {
    if (k < 2) throw validation_error("conditioning needs k >= 2");
    const long m = k / 2;
    if (k % 2 == 0) {
        if (m > 199)
            throw validation_error("conditional closed form needs k = 2m, m <= 199");
        if (m == 1) return rational(1);  // the conditioning event itself
        return rational(1, 2) +
               rational(binomial(2 * m - 2, m - 1), bigint(1) << (2 * m - 1));
    }
    if (m > 99)
        throw validation_error("conditional closed form needs k = 2m+1, m <= 99");
    return rational(1, 2) +
           rational(binomial(2 * m - 1, m - 1), bigint(1) << (2 * m - 1));
}

// One-more-toss conditionals.
//   even k=2m (1 <= m <= 99):  P(X_{2m+1} < 0 | X_{2m} < 0) = 1
//     (an even-toss loss needs m+1 tails, which already decides the odd one)
//   odd k=2m+1 (0 <= m <= 98): P(X_{2m+2} < 0 | X_{2m+1} < 0)
//                              = 1 - C(2m+1,m+1)/2^(2m+1)
inline rational cond_prob_successive(long k) {
    if (k < 1) throw validation_error("k must be >= 1");
    if (k % 2 == 0) {
        const long m = k / 2;
        if (m > 99)
            throw validation_error("successive closed form needs k = 2m, m <= 99");
        return rational(1);
    }
    const long m = (k - 1) / 2;
    if (m > 98)
        throw validation_error("successive closed form needs k = 2m+1, m <= 98");
    return 1 - rational(binomial(2 * m + 1, m + 1), bigint(1) << (2 * m + 1));
}

// View of one enumerated path handed to brute-force predicates:
// outcomes[j] is toss j+1 (+1/-1); products[j] is the exact capital product
// after j tosses, products[0] == 1. Net capital after j tosses is
// 1 - products[j], so "X_j < 0" reads products[j] > 1.
struct PathProducts {
    const std::vector<int>& outcomes;
    const std::vector<rational>& products;
    long k() const { return static_cast<long>(outcomes.size()); }
};

using path_predicate = std::function<bool(const PathProducts&)>;

// Predicate builders for the common events.
inline path_predicate x_below(long j, const rational& t) {   // X_j < t
    return [j, b = 1 - t](const PathProducts& p) { return p.products[j] > b; };
}
inline path_predicate x_at_most(long j, const rational& t) {  // X_j <= t
    return [j, b = 1 - t](const PathProducts& p) { return p.products[j] >= b; };
}
// Alive through toss j: every prefix stays strictly inside (-gamma, 1-gamma).
inline path_predicate corridor_through(long j, const rational& gamma) {
    return [j, lo = gamma, hi = 1 + gamma](const PathProducts& p) {
        for (long i = 1; i <= j; ++i)
            if (!(p.products[i] > lo && p.products[i] < hi)) return false;
        return true;
    };
}

// Exact conditional probability by enumerating all 2^k equally likely
// fair-coin sequences; the arbiter the closed forms are tested against.
// The DFS keeps a stack of exact prefix products so predicates pay only for
// comparisons.
inline rational brute_force_prob(long k, const rational& delta,
                                 const path_predicate& event,
                                 const path_predicate& condition = nullptr) {
    if (k < 1) throw validation_error("brute force needs k >= 1");
    if (k > 26) throw budget_error("brute-force enumeration is capped at k = 26");
    std::vector<int> outcomes(k);
    std::vector<rational> products(k + 1);
    products[0] = 1;
    const rational fh = 1 - delta, ft = 1 + delta;
    std::uint64_t hits = 0, total = 0;
    PathProducts view{outcomes, products};

    auto recurse = [&](auto&& self, long j) -> void {
        for (int c : {+1, -1}) {
            outcomes[j] = c;
            products[j + 1] = products[j] * (c > 0 ? fh : ft);
            if (j + 1 < k) {
                self(self, j + 1);
            } else {
                if (!condition || condition(view)) {
                    ++total;
                    if (event(view)) ++hits;
                }
            }
        }
    };
    recurse(recurse, 0);
    if (condition && total == 0)
        throw validation_error("conditioning event has probability zero");
    if (!condition) total = std::uint64_t(1) << k;
    return rational(hits, total);
}

// (sqrt(5)-1)/2: the supremum of delta for which a loss at toss 2 forces a
// loss at toss 3 (above it, (1+delta)^2 (1-delta) drops back below 1).
inline double golden_ratio_bound() { return 0.5 * (std::sqrt(5.0) - 1.0); }

namespace detail {

// Smallest integer i (over all of Z when clip=false) whose product beats the
// bound. Unclipped queries bracket the answer with floating logs, then settle
// it exactly; the bracket is generous enough that the exact scan is O(1).
inline long first_tails_above(long k, const rational& delta, const rational& bound,
                              bool strict, bool clip) {
    if (clip) return threshold_index({k, delta, bound}, strict);
    const double d = static_cast<double>(delta);
    const double est =
        (std::log(static_cast<double>(bound)) - k * std::log1p(-d)) /
        (std::log1p(d) - std::log1p(-d));
    long i = static_cast<long>(std::floor(est)) - 2;
    while (!detail::beats(detail::product_for_tails(k, i, delta), bound, strict))
        ++i;
    while (i > std::numeric_limits<long>::min() &&
           detail::beats(detail::product_for_tails(k, i - 1, delta), bound, strict))
        --i;
    return i;
}

}  // namespace detail

// Number of integer tails counts whose product lies strictly inside
// (gamma, 1+gamma) — the corridor where neither termination rule fires.
// The window length in tails space is k-independent (it is beta from the
// bounds module), so by default the count runs over all integers; clip=true
// restricts to realizable counts in [0, k].
inline long corridor_admissible_count(long k, const rational& delta,
                                      const rational& gamma, bool clip = false) {
    const long lo = detail::first_tails_above(k, delta, gamma, /*strict=*/true, clip);
    const long hi =
        detail::first_tails_above(k, delta, 1 + gamma, /*strict=*/false, clip);
    return hi > lo ? hi - lo : 0;
}

// Exact P(-gamma < X_k < 1-gamma) for a fair coin (no absorption — a single
// time slice of the corridor).
inline rational corridor_prob(long k, const rational& delta, const rational& gamma) {
    const long lo = threshold_index({k, delta, gamma}, /*strict=*/true);
    const long hi = threshold_index({k, delta, 1 + gamma}, /*strict=*/false);
    if (lo >= hi) return rational(0);
    rational term(binomial(k, lo), bigint(1) << k);
    rational sum = term;
    for (long i = lo; i + 1 < hi; ++i) {
        term *= rational(k - i, i + 1);
        sum += term;
    }
    return sum;
}

}  // namespace cpdo
