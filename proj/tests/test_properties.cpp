#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <cpdo/asym.hpp>
#include <cpdo/bounds.hpp>
#include <cpdo/exact.hpp>
#include <cpdo/sim.hpp>

using namespace cpdo;

namespace {
const rational d100(1, 100);
const rational g10(1, 10);
}  // namespace

TEST_CASE("tail splits: below, corridor, at-or-above", "[property]") {
    for (long k : {10L, 100L, 500L}) {
        const rational below = 1 - tail_prob(k, d100, g10, /*strict=*/true);
        const rational above = tail_prob(k, d100, 1 + g10, /*strict=*/false);
        CHECK(below + corridor_prob(k, d100, g10) + above == 1);
    }
}

TEST_CASE("tail probability is monotone in the bound and in strictness",
          "[property]") {
    for (long k : {7L, 20L}) {
        CHECK(tail_prob(k, d100, rational(1)) >=
              tail_prob(k, d100, rational(11, 10)));
        CHECK(tail_prob(k, d100, rational(1), /*strict=*/false) >=
              tail_prob(k, d100, rational(1), /*strict=*/true));
    }
}

TEST_CASE("enumeration agrees with the tail sums", "[property][heavy]") {
    for (long k = 1; k <= 18; ++k)
        CHECK(brute_force_prob(k, d100, x_below(k, rational(0))) ==
              prob_loss_exact(k));
    // cash-out severity tail
    for (long k : {10L, 12L, 15L})
        CHECK(brute_force_prob(k, d100, x_at_most(k, -g10)) ==
              tail_prob(k, d100, 1 + g10, /*strict=*/false));
}

TEST_CASE("enumeration agrees with the conditional closed forms",
          "[property][heavy]") {
    for (long k = 2; k <= 12; ++k) {
        CHECK(brute_force_prob(k, d100, x_below(k, rational(0)),
                               x_below(1, rational(0))) ==
              cond_prob_given_loss_at_1(k));
        CHECK(brute_force_prob(k, d100, x_below(k, rational(0)),
                               x_below(2, rational(0))) ==
              cond_prob_given_loss_at_2(k));
    }
    for (long k = 1; k <= 11; ++k)
        CHECK(brute_force_prob(k + 1, d100, x_below(k + 1, rational(0)),
                               x_below(k, rational(0))) ==
              cond_prob_successive(k));
}

TEST_CASE("enumeration agrees with the single-slice corridor",
          "[property][heavy]") {
    for (long k : {2L, 7L, 10L, 14L}) {
        const auto corridor_at_k = [k](const PathProducts& p) {
            return p.products[k] > g10 && p.products[k] < 1 + g10;
        };
        CHECK(brute_force_prob(k, d100, corridor_at_k) ==
              corridor_prob(k, d100, g10));
    }
}

TEST_CASE("a loss today makes a loss tomorrow more likely", "[property][heavy]") {
    // conditioning on X_k < -c2 lifts every later lower-tail probability
    // above its unconditional floor P(X_l < (c2-c1)/(1+c2))
    const rational c1 = rational(1, 20), c2 = rational(1, 50);
    const rational rhs_bound = 1 - (c2 - c1) / (1 + c2);  // prod > 35/34
    for (long k = 1; k <= 16; ++k) {
        for (long l = 1; k + l <= 18; ++l) {
            // plain loss begets loss
            CHECK(brute_force_prob(k + l, d100, x_below(k + l, rational(0)),
                                   x_below(k, rational(0))) >=
                  prob_loss_exact(l));
            // and begets cash-out severity
            CHECK(brute_force_prob(k + l, d100, x_at_most(k + l, -g10),
                                   x_below(k, rational(0))) >=
                  tail_prob(l, d100, 1 + g10, /*strict=*/false));
            // general two-level version; conditioning event needs k >= 2
            if (k >= 2)
                CHECK(brute_force_prob(k + l, d100, x_at_most(k + l, -c1),
                                       x_below(k, -c2)) >=
                      tail_prob(l, d100, rhs_bound, /*strict=*/true));
            // both levels at the cash-out line; reachable from k = 10
            if (k >= 10)
                CHECK(brute_force_prob(k + l, d100, x_at_most(k + l, -g10),
                                       x_below(k, -g10)) >=
                      prob_loss_exact(l));
        }
    }
}

TEST_CASE("normal approximation tracks the exact cash-out tail",
          "[property][heavy]") {
    const struct {
        long k;
        double exact, tol;
    } cases[] = {{500, 0.280515, 0.02}, {1000, 0.317639, 0.01},
                 {2000, 0.335477, 0.01}};
    for (const auto& c : cases) {
        const double exact =
            tail_prob(c.k, d100, 1 + g10, /*strict=*/false).convert_to<double>();
        CHECK(exact == Catch::Approx(c.exact).margin(5e-7));
        const double clt = prob_cashout_approx(c.k, 0.1, 0.01).probability;
        CHECK(std::abs(exact - clt) <= c.tol);
    }
}

TEST_CASE("survival bound dominates the exact corridor slice",
          "[property][heavy]") {
    // below ~9k tosses the bound is vacuous; past it, it must dominate
    for (long k : {10000L, 20000L}) {
        const double exact = corridor_prob(k, d100, g10).convert_to<double>();
        const double bound = survival_upper_bound(k, 0.1, 0.01);
        CHECK(bound <= 1.0);
        CHECK(exact <= bound);
    }
}

TEST_CASE("stopped-game survival sits under the bound", "[property][heavy]") {
    SimOptions opts;
    opts.n_paths = 1000;
    opts.max_tosses = 50000;
    opts.seed = 42;
    const EnsembleResult res = run_ensemble(ModelParams{}, opts);
    for (long k : {10000L, 20000L, 50000L}) {
        const double alive = empirical_survival(res.records, k);
        const double bound = survival_upper_bound(k, 0.1, 0.01);
        const double se = std::sqrt(alive * (1.0 - alive) /
                                    static_cast<double>(opts.n_paths));
        CHECK(alive <= bound + 3.0 * se);
    }
}

TEST_CASE("free-play sample moments match theory", "[property][heavy]") {
    const SampleMoments m = empirical_moments(ModelParams{}, 100, 50000, 11);
    CHECK(std::abs(m.mean) <= 4.0 * m.se_mean);
    CHECK(m.variance ==
          Catch::Approx(moments(100, 0.01).variance).epsilon(0.10));
}

TEST_CASE("cash-in frequency respects its analytic cap", "[property][heavy]") {
    SimOptions opts;
    opts.n_paths = 2000;
    opts.max_tosses = 20000;
    opts.seed = 6;
    const EnsembleResult res = run_ensemble(ModelParams{}, opts);
    const double cap = cash_in_upper_bound(0.1, 0.01);
    CHECK(res.report.prop_cash_in <= cap + 3.0 * res.report.se_cash_in);
}
