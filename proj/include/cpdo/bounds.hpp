#pragma once

// Analytic bounds: the cash-in probability cap, the corridor-width constant
// beta, the Stirling-type central binomial bound, and the survival decay
// bound built from the two.

#include <cmath>
#include <string>

#include "model.hpp"

namespace cpdo {

// P(cash-in) <= gamma + delta + gamma*delta: if the game ever ends, the
// martingale's stopped mean is still 0, and a cash-out overshoot is capped
// by the last wager, at most (1+gamma)*delta.
inline double cash_in_upper_bound(double gamma, double delta) {
    ModelParams{gamma, delta}.validate();
    return gamma + delta + gamma * delta;
}

// Width, in tails-count space, of the corridor gamma < prod < 1+gamma:
// beta = (ln(1+gamma) - ln gamma) / (ln(1+delta) - ln(1-delta)).
// k-independent; the number of admissible heads/tails counts at any k.
inline double corridor_width_beta(double gamma, double delta) {
    ModelParams{gamma, delta}.validate();
    return (std::log1p(gamma) - std::log(gamma)) /
           (std::log1p(delta) - std::log1p(-delta));
}

struct BoundReport {
    std::string name;
    double value;
    long k = -1;
    bool log_scale = false;  // value is ln(bound) when the raw bound overflows
    std::string assumptions;
};

// C(k, j) < 2^k * sqrt(2/(pi*k)) * exp(1/(12*k)) for even k: Stirling with
// explicit error factor. Raw value up to k = 1000; natural log above that
// (2^k stops fitting a double around k = 1024).
inline BoundReport binomial_max_bound(long k) {
    if (k < 2 || k % 2 != 0)
        throw validation_error("central binomial bound requires even k >= 2");
    const double kd = static_cast<double>(k);
    const double lg = kd * std::log(2.0) +
                      0.5 * std::log(2.0 / (3.141592653589793 * kd)) +
                      1.0 / (12.0 * kd);
    if (k > 1000) return {"central_binomial_bound_log", lg, k, true, "k even"};
    return {"central_binomial_bound", std::exp(lg), k, false, "k even"};
}

// P(-gamma < X_k < 1-gamma) < beta * sqrt(2/(pi*k)) * exp(1/(12*k)) for even
// k: at most ~beta admissible tails counts, each with probability below the
// central binomial bound over 2^k. Exceeds 1 (true but vacuous) for small k;
// reported raw — callers annotate, nothing clamps.
inline double survival_upper_bound(long k, double gamma, double delta) {
    if (k < 2 || k % 2 != 0)
        throw validation_error("survival bound requires even k >= 2 "
                               "(the central binomial bound is stated for even k)");
    return corridor_width_beta(gamma, delta) *
           std::sqrt(2.0 / (3.141592653589793 * static_cast<double>(k))) *
           std::exp(1.0 / (12.0 * static_cast<double>(k)));
}

}  // namespace cpdo
