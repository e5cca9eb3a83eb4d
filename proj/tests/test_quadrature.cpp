#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "tcbm/quadrature.hpp"

using namespace tcbm;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(QuadratureConfig{-1.0}.validate(), std::invalid_argument);
    CHECK_THROWS_AS((QuadratureConfig{1e-9, 5}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((QuadratureConfig{1e-9, 100, 0}).validate(), std::invalid_argument);
    CHECK_NOTHROW(QuadratureConfig{}.validate());
}

TEST_CASE("adaptive integration of a smooth function") {
    const auto f = [](double x) { return std::exp(-x * x); };
    const double v = integrate_adaptive(f, 0.0, 10.0, 1e-12);
    CHECK(v == doctest::Approx(0.5 * std::sqrt(kPi)).epsilon(1e-12));
}

TEST_CASE("conditionally convergent sine integral") {
    // int_0^inf sin(z)/z dz = pi/2; the tail only converges by alternation
    const auto f = [](double z) { return z == 0.0 ? 1.0 : std::sin(z) / z; };
    const double v = oscillating_integral(f, kPi, kPi, {});
    CHECK(v == doctest::Approx(0.5 * kPi).epsilon(1e-9));
}

TEST_CASE("damped sine kernel with known closed form") {
    // int_0^inf z sin(z x)/(z^2 + m^2) dz = (pi/2) e^{-m x}
    const double x = 1.5, m = 0.5;
    const auto f = [&](double z) { return z * std::sin(z * x) / (z * z + m * m); };
    const double v = oscillating_integral(f, kPi / x, kPi / x, {});
    CHECK(v == doctest::Approx(0.5 * kPi * std::exp(-m * x)).epsilon(1e-8));
}

TEST_CASE("fast Gaussian decay takes the plain-sum exit") {
    const double s = 2.0, w = 0.7;
    const auto f = [&](double z) { return std::cos(z * w) * std::exp(-0.5 * s * z * z); };
    const double expected = std::sqrt(0.5 * kPi / s) * std::exp(-0.5 * w * w / s);
    const double v = oscillating_integral(f, 0.5 * kPi / w, kPi / w, {});
    CHECK(v == doctest::Approx(expected).epsilon(1e-11));
}

TEST_CASE("heat kernel from the shifted-contour Gaussian integral") {
    // (1/2 pi) Int_{R + i eps} e^{-i z x - z^2 s/2} dz equals the heat kernel
    // exp(-x^2/(2 s)) / sqrt(2 pi s) for any contour height.
    for (const double s : {0.01, 0.1, 1.0, 10.0}) {
        for (const double eps : {0.0, 0.3}) {
            for (const double x : {0.5, 2.0}) {
                const auto f = [&](double t) -> std::complex<double> {
                    const std::complex<double> z(t, eps);
                    const std::complex<double> arg =
                        std::complex<double>(0.0, -x) * z - 0.5 * s * z * z;
                    return std::exp(arg);
                };
                const double width = kPi / x;
                const double value =
                    oscillating_integral_complex(f, 0.5 * width, width, {}).real() / kPi;
                const double expected = std::exp(-0.5 * x * x / s) / std::sqrt(2.0 * kPi * s);
                CHECK(std::abs(value - expected) <= 1e-10);
            }
        }
    }
}

TEST_CASE("panel budget exhaustion raises QuadratureError") {
    // positive slowly decaying integrand: partial sums keep drifting
    const auto f = [](double z) { return 1.0 / (1.0 + z); };
    QuadratureConfig q;
    q.max_panels = 12;
    CHECK_THROWS_AS(oscillating_integral(f, 1.0, 1.0, q), QuadratureError);
}

TEST_CASE("complex integrand round trip") {
    // int_0^inf e^{i w z} e^{-z} dz = 1 / (1 - i w)
    const double w = 2.0;
    const auto f = [&](double z) {
        return std::exp(std::complex<double>(-z, w * z));
    };
    const std::complex<double> v = oscillating_integral_complex(f, 0.5 * kPi / w, kPi / w, {});
    const std::complex<double> expected = 1.0 / std::complex<double>(1.0, -w);
    CHECK(std::abs(v - expected) <= 1e-10);
}
