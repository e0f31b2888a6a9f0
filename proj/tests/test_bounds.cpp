#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <cpdo/bounds.hpp>
#include <cpdo/exact.hpp>

using namespace cpdo;

TEST_CASE("cash-in probability cap", "[bounds]") {
    CHECK(cash_in_upper_bound(0.1, 0.01) == Catch::Approx(0.111).margin(1e-15));
    CHECK(cash_in_upper_bound(0.0625, 0.01) ==
          Catch::Approx(0.073125).margin(1e-15));
    CHECK_THROWS_AS(cash_in_upper_bound(1.5, 0.01), validation_error);
}

TEST_CASE("corridor width beta", "[bounds]") {
    CHECK(corridor_width_beta(0.1, 0.01) ==
          Catch::Approx(119.890767).margin(5e-7));
    CHECK(corridor_width_beta(0.1, 0.1) ==
          Catch::Approx(11.949404).margin(5e-7));
    // the unclipped admissible count brackets beta within one
    const long count =
        corridor_admissible_count(1000, rational(1, 100), rational(1, 10));
    CHECK(std::abs(static_cast<double>(count) - corridor_width_beta(0.1, 0.01)) <=
          1.0);
}

TEST_CASE("central binomial bound", "[bounds]") {
    CHECK(binomial_max_bound(2).value ==
          Catch::Approx(2.352776417).margin(5e-9));
    CHECK(binomial_max_bound(2).value > 2.0);  // C(2,1)
    CHECK(binomial_max_bound(10).value ==
          Catch::Approx(260.530839).margin(5e-6));
    CHECK(binomial_max_bound(10).value > 252.0);  // C(10,5)

    // k = 100 against the exact coefficient, on the 2^-k scale
    const double exact_ratio =
        rational(binomial(100, 50), bigint(1) << 100).convert_to<double>();
    const double bound_ratio = binomial_max_bound(100).value / std::pow(2.0, 100);
    CHECK(exact_ratio == Catch::Approx(0.079589237).margin(5e-9));
    CHECK(bound_ratio == Catch::Approx(0.079854974).margin(5e-9));
    CHECK(bound_ratio > exact_ratio);

    CHECK_THROWS_AS(binomial_max_bound(7), validation_error);
    CHECK_THROWS_AS(binomial_max_bound(0), validation_error);
}

TEST_CASE("central binomial bound switches to log scale past k = 1000", "[bounds]") {
    const BoundReport raw = binomial_max_bound(1000);
    CHECK_FALSE(raw.log_scale);
    const BoundReport logged = binomial_max_bound(1002);
    CHECK(logged.log_scale);
    // continuity: exp(log value) equals the raw formula while it still fits
    const double direct = std::pow(2.0, 1002) *
                          std::sqrt(2.0 / (3.141592653589793 * 1002.0)) *
                          std::exp(1.0 / (12.0 * 1002.0));
    CHECK(std::exp(logged.value) == Catch::Approx(direct).epsilon(1e-10));
    // far beyond double range the log form keeps working
    CHECK(binomial_max_bound(100000).value ==
          Catch::Approx(100000 * std::log(2.0) +
                        0.5 * std::log(2.0 / (3.141592653589793 * 100000)) +
                        1.0 / 1200000.0)
              .epsilon(1e-12));
}

TEST_CASE("survival bound decays like 1/sqrt(k)", "[bounds]") {
    CHECK(survival_upper_bound(50000, 0.1, 0.01) ==
          Catch::Approx(0.427800731).margin(5e-9));
    CHECK(survival_upper_bound(1000000, 0.1, 0.01) ==
          Catch::Approx(0.095659000).margin(5e-9));
    // vacuous (above 1) until k = 9152
    CHECK(survival_upper_bound(9150, 0.1, 0.01) > 1.0);
    CHECK(survival_upper_bound(9152, 0.1, 0.01) <= 1.0);
    CHECK_THROWS_AS(survival_upper_bound(9151, 0.1, 0.01), validation_error);
}
