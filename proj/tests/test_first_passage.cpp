#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "tcbm/first_passage.hpp"
#include "tcbm/mc.hpp"
#include "tcbm/portfolio.hpp"
#include "test_support.hpp"

using namespace tcbm;

namespace {

constexpr double kSqrt2Pi = 2.5066282746310002;

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / kSqrt2Pi; }

// image-method densities for a deterministic clock G_t = t
double image_surviving(double t, double l, const BrownianParams& p) {
    if (l <= 0.0) {
        return 0.0;
    }
    const double s = p.sigma * std::sqrt(t);
    const double drift_t = p.drift_rate() * t;
    return (normal_pdf((l - p.x - drift_t) / s) -
            std::exp(-2.0 * p.beta * p.x) * normal_pdf((l + p.x - drift_t) / s)) /
           s;
}

double image_defaulted(double t, double l, const BrownianParams& p) {
    const double s = p.sigma * std::sqrt(t);
    const double drift_t = p.drift_rate() * t;
    const double full = normal_pdf((l - p.x - drift_t) / s) / s;
    if (l <= 0.0) {
        return full;
    }
    return full - image_surviving(t, l, p);
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2 != 0) {
        ++n;
    }
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        acc += ((i % 2 == 1) ? 4.0 : 2.0) * f(a + i * h);
    }
    return acc * h / 3.0;
}

const BrownianParams kModelB{1.5, std::sqrt(0.0846), -0.5};
const GammaSubordinator kVg{1.0, 0.0, 1.0};
const ExponentialSubordinator kDet{1.0, 1.0, 0.0};

}  // namespace

TEST_CASE("second passage CDF reduces to the closed form for a deterministic clock") {
    for (double t : {0.1, 1.0, 5.0, 30.0}) {
        for (double x : {0.3, 1.0, 2.0}) {
            const BrownianParams p{x, 0.3, -0.5};
            CHECK(std::abs(second_passage_cdf(t, p, kDet) - passage_cdf(t, p)) <= 1e-8);
        }
    }
}

TEST_CASE("second passage CDF boundary cases") {
    CHECK(second_passage_cdf(0.0, kModelB, kVg) == 0.0);
    CHECK(second_passage_cdf(1.0, {1e-12, 0.3, -0.5}, kVg) == 1.0);
    CHECK(second_passage_cdf(2000.0, kModelB, kVg) >= 0.9999);
    CHECK_THROWS_AS(second_passage_cdf(1.0, {-1.0, 0.3, -0.5}, kVg), std::invalid_argument);
    CHECK_THROWS_AS(second_passage_cdf(-1.0, kModelB, kVg), std::invalid_argument);
}

TEST_CASE("second passage CDF is monotone in t and in x") {
    double prev = 0.0;
    for (double t : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
        const double v = second_passage_cdf(t, kModelB, kVg);
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
    double prev_x = 1.0;
    for (double x : {0.3, 0.6, 1.0, 1.5, 2.5}) {
        const BrownianParams p{x, kModelB.sigma, kModelB.beta};
        const double v = second_passage_cdf(5.0, p, kVg);
        CHECK(v <= prev_x + 1e-12);
        prev_x = v;
    }
}

TEST_CASE("second passage CDF agrees with simulation for the gamma clock") {
    const SimConfig sim{.seed = 90210, .n_paths = 200000};
    const auto mc = mc_second_passage_cdf(kVg, kModelB, {1.0, 5.0, 30.0}, sim);
    for (std::size_t i = 0; i < mc.t.size(); ++i) {
        const double analytic = second_passage_cdf(mc.t[i], kModelB, kVg);
        CHECK(std::abs(analytic - mc.estimate[i]) <= 3.0 * mc.std_error[i]);
    }
}

TEST_CASE("density route equals the transform route through a supplied table") {
    // gamma clock density in closed form (shape c t, rate a)
    const double t = 1.0;
    const auto rho = [&](double y) { return std::exp(-y); };
    const auto table = DensityTable::from_density(rho, 0.0, 60.0, 200000);
    const double via_density = second_passage_cdf_from_density(kModelB, table);
    const double via_transform = second_passage_cdf(t, kModelB, kVg);
    CHECK(std::abs(via_density - via_transform) <= 1e-5);
}

TEST_CASE("a point-mass table reproduces the Brownian closed form") {
    DensityTable atom;
    atom.atom_y = 2.0;
    atom.atom_mass = 1.0;
    const BrownianParams p{1.0, 0.3, -0.5};
    CHECK(second_passage_cdf_from_density(p, atom) ==
          doctest::Approx(passage_cdf(2.0, p)).epsilon(1e-14));

    DensityTable bad = atom;
    bad.atom_mass = 0.9;
    CHECK_THROWS_AS(second_passage_cdf_from_density(p, bad), std::invalid_argument);
}

TEST_CASE("route equivalence holds for every clock family via mixing tables") {
    const std::vector<std::shared_ptr<const TimeChange>> clocks = {
        std::make_shared<ExponentialSubordinator>(1.0, 0.3, 0.7),
        std::make_shared<GammaSubordinator>(1.0, 0.0, 1.0),
        std::make_shared<InverseGaussianSubordinator>(1.0, 1.0),
        std::make_shared<IntegratedCir>(1.0, 1.0, 1.0, 1.0),
        std::make_shared<IntegratedOuJump>(1.0, 1.0, 1.0, 1.0),
    };
    const double t = 2.0;
    for (const auto& clock : clocks) {
        const auto table = mixing_density(*clock, t, 2048, 12.0);
        const double via_density = second_passage_cdf_from_density(kModelB, table);
        const double via_transform = second_passage_cdf(t, kModelB, *clock);
        INFO("family with u_min=", clock->u_min());
        CHECK(std::abs(via_density - via_transform) <= 1e-5);
    }
}

TEST_CASE("surviving density matches the image method for a deterministic clock") {
    const BrownianParams p{1.0, 0.4, -0.6};
    for (double t : {0.5, 2.0}) {
        for (double l : {0.2, 0.8, 1.5, 3.0}) {
            CHECK(std::abs(surviving_density(t, l, p, kDet) - image_surviving(t, l, p)) <= 1e-8);
        }
    }
    CHECK(surviving_density(1.0, -0.5, p, kDet) == 0.0);
    CHECK(surviving_density(1.0, 0.0, p, kDet) == 0.0);
}

TEST_CASE("defaulted density matches the image method for a deterministic clock") {
    const BrownianParams p{1.0, 0.4, -0.6};
    for (double t : {0.5, 2.0}) {
        for (double l : {-1.0, -0.2, 0.3, 1.2}) {
            CHECK(std::abs(defaulted_density(t, l, p, kDet) - image_defaulted(t, l, p)) <= 1e-8);
        }
    }
}

TEST_CASE("density transforms on a shifted contour (beta >= 0)") {
    const BrownianParams p{1.0, 0.5, 0.0};
    for (double l : {0.4, 1.0, 2.2}) {
        CHECK(std::abs(surviving_density(1.5, l, p, kDet) - image_surviving(1.5, l, p)) <= 1e-8);
        CHECK(std::abs(defaulted_density(1.5, l, p, kDet) - image_defaulted(1.5, l, p)) <= 1e-8);
    }
}

TEST_CASE("surviving and defaulted densities add to the unconstrained one") {
    const double t = 1.0;
    for (double l : {0.5, 1.5, 2.5}) {
        const double sum = surviving_density(t, l, kModelB, kVg) +
                           defaulted_density(t, l, kModelB, kVg);
        const double full = tcbm_density(t, l, kModelB, kVg);
        CHECK(std::abs(sum - full) <= 1e-8);
    }
}

TEST_CASE("density masses split the survival probability") {
    const double t = 1.0;
    const double survival = 1.0 - second_passage_cdf(t, kModelB, kVg);
    const double surviving_mass =
        simpson([&](double l) { return surviving_density(t, l, kModelB, kVg); }, 1e-9, 10.0,
                800);
    CHECK(std::abs(surviving_mass - survival) <= 1e-6);

    const double defaulted_mass =
        simpson([&](double l) { return defaulted_density(t, l, kModelB, kVg); }, -8.0, 10.0,
                1200);
    CHECK(std::abs(defaulted_mass - second_passage_cdf(t, kModelB, kVg)) <= 1e-6);
}

TEST_CASE("survival characteristic function") {
    const Complex k(0.0, 1.0);
    CHECK_THROWS_AS(survival_char_fn(Complex(1.0, 0.0), 1.0, kModelB, kVg),
                    std::invalid_argument);
    // no time elapsed
    const Complex at_zero = survival_char_fn(k, 0.0, kModelB, kVg);
    const Complex expected0 = std::exp(Complex(-kModelB.beta * kModelB.x - kModelB.x, 0.0));
    CHECK(std::abs(at_zero - expected0) <= 1e-12);

    // internal consistency: integrate the surviving density against the payoff
    const BrownianParams p{1.0, 1.0, 0.0};
    const ExponentialSubordinator det(1.0, 1.0, 0.0);
    const Complex direct = survival_char_fn(k, 1.0, p, det);
    const double via_density = simpson(
        [&](double l) { return image_surviving(1.0, l, p) * std::exp(-l); }, 1e-9, 12.0, 1200);
    CHECK(std::abs(direct.real() - via_density) <= 1e-7);
    CHECK(std::abs(direct.imag()) <= 1e-9);
}

TEST_CASE("survival characteristic function agrees with simulation") {
    // E[1_{surv} e^{-beta L + i k L}] at k = 0.5i via exact terminal sampling
    // with Brownian-bridge survival weights
    const Complex k(0.0, 0.5);
    const Complex analytic = survival_char_fn(k, 1.0, kModelB, kVg);
    const double s2 = kModelB.sigma * kModelB.sigma;
    double sum = 0.0, sum_sq = 0.0;
    const int n = 200000;
    for (int path = 0; path < n; ++path) {
        PathRng rng(6061, path);
        const double g = sample_subordinator_increment(kVg, 1.0, rng);
        const double terminal =
            kModelB.x + kModelB.beta * s2 * g + kModelB.sigma * std::sqrt(g) * rng.normal();
        double value = 0.0;
        if (terminal > 0.0 && g > 0.0) {
            const double bridge = -std::expm1(-2.0 * kModelB.x * terminal / (s2 * g));
            value = bridge * std::exp(-kModelB.beta * terminal - 0.5 * terminal);
        }
        sum += value;
        sum_sq += value * value;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / n);
    CHECK(std::abs(analytic.real() - mean) <= 3.0 * se);
}

TEST_CASE("a hopeless tolerance raises QuadratureError") {
    QuadratureConfig q;
    q.max_panels = 12;
    // surviving density at l = x has a genuinely divergent transform when the
    // gamma clock carries little mass (2 c t < 1): the engine must refuse
    CHECK_THROWS_AS(surviving_density(0.3, kModelB.x, kModelB, kVg, q), QuadratureError);
}
