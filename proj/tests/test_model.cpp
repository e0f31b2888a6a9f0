#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <cpdo/model.hpp>
#include <cpdo/philox.hpp>

using namespace cpdo;

TEST_CASE("coin outcomes are only +1 or -1", "[model]") {
    CHECK(heads.value == 1);
    CHECK(tails.value == -1);
    CHECK_THROWS_AS(CoinOutcome(0), validation_error);
    CHECK_THROWS_AS(CoinOutcome(2), validation_error);
    CHECK_THROWS_AS(CoinOutcome(-2), validation_error);
}

TEST_CASE("parameter validation rejects out-of-range values", "[model]") {
    CHECK_NOTHROW(ModelParams{}.validate());
    CHECK_NOTHROW(ModelParams{0.1, 0.1, 1.0, 1.0}.validate());  // delta == gamma is legal
    CHECK_THROWS_AS((ModelParams{0.0, 0.01}.validate()), validation_error);
    CHECK_THROWS_AS((ModelParams{1.0, 0.01}.validate()), validation_error);
    CHECK_THROWS_AS((ModelParams{0.1, 0.0}.validate()), validation_error);
    CHECK_THROWS_AS((ModelParams{0.1, 1.0}.validate()), validation_error);
    CHECK_THROWS_AS((ModelParams{0.1, 0.01, -0.1}.validate()), validation_error);
    CHECK_THROWS_AS((ModelParams{0.1, 0.01, 1.1}.validate()), validation_error);
    CHECK_THROWS_AS((ModelParams{0.1, 0.01, 0.5, 0.0}.validate()), validation_error);
}

TEST_CASE("single step moves capital by delta of the shortfall", "[model]") {
    CHECK(step(0.0, heads, 0.01) == 0.01);
    CHECK(step(0.0, tails, 0.01) == -0.01);
    CHECK(step(0.5, heads, 0.01) == Catch::Approx(0.505).epsilon(1e-15));
    CHECK(step(-0.5, tails, 0.01) == Catch::Approx(-0.515).epsilon(1e-15));
    CHECK_THROWS_AS(step(1.0, heads, 0.01), validation_error);  // game already over
}

TEST_CASE("iterated steps match the closed-form product", "[model]") {
    const double delta = 0.01;
    // deterministic pseudo-random 40-toss sequence
    CoinStream stream(123, 0, 0.5);
    std::vector<CoinOutcome> seq;
    double x = 0.0;
    for (int i = 0; i < 40; ++i) {
        seq.push_back(stream.toss(i));
        x = step(x, seq.back(), delta);
    }
    CHECK(closed_form(seq, delta) == Catch::Approx(x).margin(1e-14));
}

TEST_CASE("closed form agrees with the heads-count formula", "[model]") {
    const double delta = 0.02;
    CoinStream stream(7, 3, 0.5);
    std::vector<CoinOutcome> seq;
    long h = 0;
    for (int i = 0; i < 100; ++i) {
        seq.push_back(stream.toss(i));
        if (seq.back().value > 0) ++h;
    }
    CHECK(closed_form(seq, delta) ==
          Catch::Approx(capital_from_heads(100, h, delta)).margin(1e-13));
}

TEST_CASE("all-heads capital landmarks", "[model]") {
    CHECK(two_headed_capital(10, 0.01) == Catch::Approx(0.095618).margin(5e-7));
    CHECK(two_headed_capital(100, 0.01) == Catch::Approx(0.633968).margin(5e-7));
    CHECK(two_headed_capital(10, 0.01) == capital_from_heads(10, 10, 0.01));

    // smallest k at which an always-winning player reaches 0.9
    long k = 0;
    while (two_headed_capital(k, 0.01) < 0.9) ++k;
    CHECK(k == 230);
}

TEST_CASE("all-tails capital goes negative without bound", "[model]") {
    CHECK(capital_from_heads(10, 0, 0.01) == Catch::Approx(-0.104622).margin(5e-7));
    CHECK(capital_from_heads(1, 0, 0.01) == Catch::Approx(-0.01).margin(1e-15));
}

TEST_CASE("balanced heads and tails is a small gain", "[model]") {
    // each head/tail pair multiplies the product by 1 - delta^2, and capital
    // is one minus the product, so break-even tossing nets slightly ahead
    const double x = capital_from_heads(20, 10, 0.01);
    CHECK(x > 0.0);
    CHECK(x == Catch::Approx(-std::expm1(10 * std::log1p(-1e-4))).margin(1e-15));
}

TEST_CASE("first guaranteed cash-out toss against a pure losing streak", "[model]") {
    CHECK(two_tailed_cashout_toss(0.1, 0.01) == 10);
    CHECK(two_tailed_cashout_toss(0.1, 0.1) == 1);
    CHECK(two_tailed_cashout_toss(0.2, 0.01) == 19);
}

TEST_CASE("cash-out toss tie is arbitrated exactly", "[model]") {
    // (1.01)^2 == 1.0201 == 1 + gamma exactly; floating logs alone sit on
    // the fence, the exact big-integer comparison settles it at 2
    CHECK(two_tailed_cashout_toss(0.0201, 0.01) == 2);
}

TEST_CASE("free-play moments: zero mean, compounding variance", "[model]") {
    const Moments m = moments(100, 0.01);
    CHECK(m.mean == 0.0);
    CHECK(m.variance == Catch::Approx(0.010049662).epsilon(1e-8));
    CHECK(moments(0, 0.01).variance == 0.0);
    // variance grows in k
    CHECK(moments(200, 0.01).variance > m.variance);
}

TEST_CASE("one-step mean is exactly the prior state for a fair coin", "[model]") {
    // binary-representable delta and x make the martingale identity exact in
    // IEEE arithmetic, not just up to rounding
    const double delta = 1.0 / 128.0;
    const double x = 3.0 / 8.0;
    CHECK(step(x, heads, delta) + step(x, tails, delta) == 2.0 * x);
    // general values: within a few ulps
    for (double xv : {0.123, -0.456, 0.789}) {
        const double sum = step(xv, heads, 0.01) + step(xv, tails, 0.01);
        CHECK(sum == Catch::Approx(2.0 * xv).margin(1e-15));
    }
}
