#include "doctest.h"

#include <cmath>

#include "bikm/bounds.hpp"
#include "bikm/error.hpp"

using namespace bikm;

TEST_CASE("closed-form LP bound") {
    // 1 + e^-2 (12 + 0.5)
    CHECK(alpha_lp_closed(2.0) == doctest::Approx(1.0 + std::exp(-2.0) * 12.5).epsilon(1e-12));
    CHECK(alpha_lp_closed(2.0) == doctest::Approx(2.691).epsilon(1e-3));
    CHECK(alpha_lp_closed(20.0) ==
          doctest::Approx(1.0 + std::exp(-20.0) * (120.0 / 19.0 + 361.0 / 20.0)).epsilon(1e-9));
    CHECK(alpha_lp_closed(1.0 + 1e-9) > 1e8);
    CHECK_THROWS_AS(alpha_lp_closed(1.0), Error);
    CHECK_THROWS_AS(alpha_lp_closed(0.5), Error);
    // The as-printed variant flips the sign of the dominant term.
    CHECK(alpha_lp_closed_as_printed(2.0) < 1.0);
}

TEST_CASE("tight LP bound matches the per-beta claims where it is the binding curve") {
    CHECK(alpha_lp_tight(1.5).value < 4.8);
    CHECK(alpha_lp_tight(2.0).value < 2.59);
    // Frozen from a fine-grid evaluation of the same maximization.
    CHECK(alpha_lp_tight(2.0).value == doctest::Approx(2.58436).epsilon(2e-4));
    CHECK(alpha_lp_tight(1.5).value == doctest::Approx(4.79682).epsilon(2e-4));
}

TEST_CASE("overall guarantee meets every per-beta claim") {
    CHECK(alpha_overall(1.3) < 6.45);
    CHECK(alpha_overall(1.5) < 4.8);
    CHECK(alpha_overall(2.0) < 2.59);
    CHECK(alpha_overall(3.0) < 1.4);
}

TEST_CASE("tight bound properties") {
    const TightBound b2 = alpha_lp_tight(2.0);
    CHECK(b2.argmax_gamma >= 0.0);
    CHECK(b2.argmax_gamma <= 1.0);

    double prev = 1e300;
    for (double beta = 1.05; beta <= 6.0 + 1e-9; beta += 0.05) {
        const double v = alpha_lp_tight(beta).value;
        CHECK(v <= prev + 1e-9);
        CHECK(v <= alpha_lp_closed(beta) + 1e-9);
        prev = v;
    }
}

TEST_CASE("residual term vanishes at the gamma -> 0 end") {
    // The last summand of the tight objective at gamma = 1e-8 is below 1e-7.
    const double beta = 2.0;
    const double gamma = 1e-8;
    const double term = beta * std::exp(-beta) * (gamma / 2.0 + gamma * gamma / 3.0);
    CHECK(term < 1e-7);
    // And the grid evaluation is continuous there.
    CHECK(alpha_lp_tight(beta, 1e-3).value == doctest::Approx(alpha_lp_tight(beta).value).epsilon(1e-6));
}

TEST_CASE("local-search bound") {
    CHECK(alpha_local(2.0, 1, 0.0) == doctest::Approx(9.0));
    CHECK(alpha_local(2.0, 1000000, 0.0) == doctest::Approx(4.0).epsilon(1e-5));
    CHECK(alpha_local(1.0001, 1000000, 0.0) <= 9.0 + 1e-2);
    CHECK(alpha_local(2.0, 2, 0.5) == doctest::Approx(2.0 * (1.0 + 1.0 + 0.5) * (1.0 + 1.0 + 0.5)));
    CHECK_THROWS_AS(alpha_local(2.0, 1, 1.0), Error);
    CHECK_THROWS_AS(alpha_local(2.0, 0, 0.0), Error);
    CHECK_THROWS_AS(alpha_local(1.0, 1, 0.0), Error);
}

TEST_CASE("pipage bound") {
    const double first = 1.0 + 8.0 * std::exp(-2.0);
    const double second = 2.0 * (std::exp(-1.0) + 8.0 * std::exp(-2.0));
    CHECK(alpha_pipage(2.0) == doctest::Approx(std::max(first, second)).epsilon(1e-12));
    CHECK(alpha_pipage(2.0) == doctest::Approx(2.901).epsilon(1e-3));
    // Second branch dominates near beta = 1; the max tends to 1 for large beta.
    CHECK(alpha_pipage(1.1) ==
          doctest::Approx(1.1 * (std::exp(-1.0) + 8.0 * std::exp(-1.1)) / 0.1).epsilon(1e-12));
    CHECK(alpha_pipage(30.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(alpha_pipage(1.0), Error);
}
