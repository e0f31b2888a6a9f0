#pragma once

// Deterministic core of the coin-toss betting model: one-step recurrence,
// closed form, log-domain capital evaluation, analytic moments, and the two
// degenerate (all-heads / all-tails) scenarios.
//
// Net capital x is the stake minus the initial unit stake; every formula is
// stated in x. The stake itself (x + 1) appears only in report formatting.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace cpdo {

// Parameter/state violations -> exit code 2 at the CLI; enumeration or table
// sizes beyond the supported budget -> exit code 3.
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A single toss: +1 heads, -1 tails. No other encoding is accepted.
struct CoinOutcome {
    int value;
    explicit constexpr CoinOutcome(int v) : value(v) {
        if (v != 1 && v != -1)
            throw validation_error("coin outcome must be +1 or -1");
    }
};
inline constexpr CoinOutcome heads{+1};
inline constexpr CoinOutcome tails{-1};

struct ModelParams {
    double gamma = 0.1;    // cash-out cushion: stop once x <= -gamma
    double delta = 0.01;   // fraction of (1 - x) wagered per toss
    double p_heads = 0.5;
    double cash_in_level = 0.9;  // stop once x >= this (defaults to 1 - gamma)

    void validate() const {
        if (!(delta > 0.0 && delta < 1.0))
            throw validation_error("delta must lie in (0,1)");
        if (!(gamma > 0.0 && gamma < 1.0))
            throw validation_error("gamma must lie in (0,1)");
        if (!(p_heads >= 0.0 && p_heads <= 1.0))
            throw validation_error("p_heads must lie in [0,1]");
        if (!(cash_in_level > 0.0 && cash_in_level <= 1.0))
            throw validation_error("cash_in_level must lie in (0,1]");
    }
};

struct NetCapitalState {
    long k = 0;        // toss index
    long n_heads = 0;  // heads among the first k tosses
    double x = 0.0;    // net capital after toss k
};

// x_k = x_{k-1} + delta * (1 - x_{k-1}) * c_k
inline double step(double x, CoinOutcome c, double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw validation_error("delta must lie in (0,1)");
    if (!(x < 1.0))
        throw validation_error("net capital at or above 1 is outside the model domain");
    return x + delta * (1.0 - x) * c.value;
}

// x_k = 1 - prod_j (1 - delta * c_j); matches iterated step from x_0 = 0.
// Direct multiplication is accurate enough up to ~10^4 tosses; use
// capital_from_heads beyond that.
inline double closed_form(std::span<const CoinOutcome> outcomes, double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw validation_error("delta must lie in (0,1)");
    double prod = 1.0;
    for (CoinOutcome c : outcomes) prod *= 1.0 - delta * c.value;
    return 1.0 - prod;
}

// The product depends on the outcomes only through the heads count, so the
// capital can be evaluated in the log domain:
//   x = 1 - exp(k*ln(1+delta) + n_heads*(ln(1-delta) - ln(1+delta)))
// which stays finite and accurate out to k ~ 10^6 where naive products
// under/overflow.
inline double capital_from_heads(long k, long n_heads, double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw validation_error("delta must lie in (0,1)");
    if (k < 0 || n_heads < 0 || n_heads > k)
        throw validation_error("n_heads must lie in [0, k]");
    const double lp = std::log1p(delta);
    const double lm = std::log1p(-delta);
    return -std::expm1(static_cast<double>(k) * lp +
                       static_cast<double>(n_heads) * (lm - lp));
}

// All-heads capital 1 - (1-delta)^k: strictly increasing, always < 1.
inline double two_headed_capital(long k, double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw validation_error("delta must lie in (0,1)");
    if (k < 0) throw validation_error("k must be >= 0");
    return -std::expm1(static_cast<double>(k) * std::log1p(-delta));
}

namespace detail {

// Exact rational equivalent of a finite double (every finite double is
// mantissa * 2^exp). Used only for razor-thin boundary decisions.
inline void double_as_ratio(double v, boost::multiprecision::cpp_int& num,
                            boost::multiprecision::cpp_int& den) {
    int e = 0;
    double m = std::frexp(v, &e);          // v = m * 2^e, |m| in [0.5, 1)
    long long mi = static_cast<long long>(std::ldexp(m, 53));
    e -= 53;
    num = mi;
    den = 1;
    if (e > 0)
        num <<= e;
    else
        den <<= -e;
}

// Exact comparison (1+delta)^k >= 1+gamma for double parameters.
inline bool pow_reaches(double delta, double gamma, long k) {
    using boost::multiprecision::cpp_int;
    cpp_int dn, dd, gn, gd;
    double_as_ratio(delta, dn, dd);
    double_as_ratio(gamma, gn, gd);
    // (dd + dn)^k * gd >= (gd + gn) * dd^k
    cpp_int lhs = pow(dd + dn, static_cast<unsigned>(k)) * gd;
    cpp_int rhs = (gd + gn) * pow(dd, static_cast<unsigned>(k));
    return lhs >= rhs;
}

}  // namespace detail

// Smallest k with (1+delta)^k >= 1+gamma: the all-tails cash-out toss.
// The real solution ln(1+gamma)/ln(1+delta) is ceiled; when it lands within
// 1e-9 of an integer the boundary is arbitrated in exact rational arithmetic
// (equality is a cash-out, because the rule is "to or below").
inline long two_tailed_cashout_toss(double gamma, double delta) {
    ModelParams{gamma, delta}.validate();
    const double kf = std::log1p(gamma) / std::log1p(delta);
    const double kr = std::round(kf);
    if (std::abs(kf - kr) < 1e-9) {
        const long n = static_cast<long>(kr);
        return detail::pow_reaches(delta, gamma, n) ? n : n + 1;
    }
    return static_cast<long>(std::ceil(kf));
}

// E(x_k) = 0; Var(x_k) = (1 + delta^2)^k - 1.
struct Moments {
    double mean;
    double variance;
};
inline Moments moments(long k, double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw validation_error("delta must lie in (0,1)");
    if (k < 0) throw validation_error("k must be >= 0");
    return {0.0, std::expm1(static_cast<double>(k) * std::log1p(delta * delta))};
}

}  // namespace cpdo
