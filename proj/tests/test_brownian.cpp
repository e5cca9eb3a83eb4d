#include <doctest.h>

#include <cmath>

#include "tcbm/brownian.hpp"
#include "tcbm/mc.hpp"
#include "tcbm/quadrature.hpp"
#include "test_support.hpp"

using namespace tcbm;

TEST_CASE("passage_cdf matches the reflection value at beta = 0") {
    const BrownianParams p{1.0, 1.0, 0.0};
    // 2 N(-1), confirmed below by bridge-weighted Monte Carlo
    const double expected = 0.3173105078629141;
    CHECK(passage_cdf(1.0, p) == doctest::Approx(expected).epsilon(1e-13));

    const auto mc = tcbm_test::bridge_survival_mc(p, 1.0, 0.0, false, 100000, 250, 7001);
    const double mc_cdf = 1.0 - mc.mean;
    CHECK(std::abs(mc_cdf - expected) <= 3.0 * mc.se);
}

TEST_CASE("passage_cdf boundary behavior") {
    // started at the barrier: N(-z) + N(z) = 1
    CHECK(passage_cdf(1.0, {1e-12, 1.0, -0.5}) == doctest::Approx(1.0).epsilon(1e-12));
    // a distant barrier cannot be reached instantly
    CHECK(passage_cdf(1e-10, {1.5, 0.3, -0.5}) == 0.0);
}

TEST_CASE("passage_cdf is a CDF in t") {
    const BrownianParams p{1.5, 0.3, -0.5};
    double prev = 0.0;
    for (double t = 0.25; t <= 60.0; t *= 1.6) {
        const double v = passage_cdf(t, p);
        CHECK(v >= prev);
        CHECK(v <= 1.0);
        prev = v;
    }
}

TEST_CASE("passage_cdf survives extreme drift without overflow") {
    const BrownianParams p{400.0, 1.0, -1.0};  // exp(-2 beta x) alone would overflow
    const double v = passage_cdf(1.0, p);
    CHECK(std::isfinite(v));
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
}

TEST_CASE("passage_laplace_exponent closed-form values") {
    CHECK(passage_laplace_exponent(0.0, {2.0, 0.7, -0.5}) == 0.0);
    // beta > 0: psi(0) = 2 beta x, so E[1_{t* < inf}] = e^{-2 beta x}
    CHECK(passage_laplace_exponent(0.0, {1.0, 1.0, 0.5}) == doctest::Approx(1.0).epsilon(1e-14));
    // sqrt(2u) at beta = 0
    CHECK(passage_laplace_exponent(0.5, {1.0, 1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(passage_laplace_exponent(-0.125, {1.0, 1.0, -0.5}),
                    std::invalid_argument);  // at the branch point
}

TEST_CASE("Laplace transform of the passage density matches the exponent") {
    const BrownianParams p{1.0, 1.0, -0.5};
    const double u = 0.5;
    // u * int_0^inf e^{-u t} P(t) dt = e^{-psi(u)} after integrating by parts
    const auto f = [&](double t) { return std::exp(-u * t) * passage_cdf(t, p); };
    const double lhs = u * integrate_adaptive(f, 1e-12, 200.0, 1e-11);
    const double rhs = std::exp(-passage_laplace_exponent(u, p));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-7));
}

TEST_CASE("mc passage sampling agrees with the Laplace exponent") {
    const BrownianParams p{1.0, 1.0, 0.0};
    PathRng rng(424242, 0);
    double sum = 0.0, sum_sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double v = std::exp(-0.5 * sample_passage_time(p, rng));
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / n);
    CHECK(std::abs(mean - std::exp(-1.0)) <= 3.0 * se);
}

TEST_CASE("survival_above closed-form value and Monte Carlo confirmation") {
    const BrownianParams p{1.0, 1.0, 0.0};
    // N(0) - N(-2)
    const double expected = 0.4772498680518208;
    CHECK(survival_above(1.0, 1.0, p) == doctest::Approx(expected).epsilon(1e-13));

    const auto mc = tcbm_test::bridge_survival_mc(p, 1.0, 1.0, true, 100000, 250, 7003);
    CHECK(std::abs(mc.mean - expected) <= 3.0 * mc.se);
}

TEST_CASE("survival_above limits and complement identity") {
    const BrownianParams p{1.2, 0.4, -0.6};
    CHECK(survival_above(2.0, 60.0, p) == doctest::Approx(0.0).epsilon(1e-30));
    for (double t : {0.1, 1.0, 5.0, 25.0}) {
        CHECK(std::abs(survival_above(t, 0.0, p) + passage_cdf(t, p) - 1.0) <= 1e-14);
    }
    // nonincreasing in the level
    double prev = 1.0;
    for (double level = 0.0; level <= 4.0; level += 0.25) {
        const double v = survival_above(1.5, level, p);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(passage_cdf(0.0, {1.0, 1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(passage_cdf(1.0, {-1.0, 1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(passage_cdf(1.0, {1.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(survival_above(1.0, -0.1, {1.0, 1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("log_norm_cdf stays accurate into the deep tail") {
    // against the direct computation where erfc is still alive
    for (double z : {-1.0, -5.0, -10.0, -20.0, -35.0}) {
        CHECK(log_norm_cdf(z) == doctest::Approx(std::log(norm_cdf(z))).epsilon(1e-12));
    }
    // far tail: finite, decreasing, no overflow
    CHECK(std::isfinite(log_norm_cdf(-100.0)));
    CHECK(log_norm_cdf(-100.0) < log_norm_cdf(-50.0));
}
