#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "tcbm/mc.hpp"
#include "tcbm/time_change.hpp"

using namespace tcbm;

namespace {

std::vector<std::shared_ptr<const TimeChange>> unit_scale_families() {
    return {
        std::make_shared<ExponentialSubordinator>(1.0, 0.5, 0.5, true),
        std::make_shared<GammaSubordinator>(1.0, 0.0, 1.0, true),
        std::make_shared<InverseGaussianSubordinator>(1.0, 1.0, true),
        std::make_shared<IntegratedCir>(1.0, 1.0, 1.0, 1.0, true),
        std::make_shared<IntegratedOuJump>(1.0, 1.0, 1.0, 1.0, true),
    };
}

}  // namespace

TEST_CASE("psi vanishes at u = 0 and t = 0 for every family") {
    for (const auto& tc : unit_scale_families()) {
        CHECK(std::abs(tc->laplace_exponent(0.0, 5.0)) <= 1e-13);
        CHECK(std::abs(tc->laplace_exponent(2.0, 0.0)) <= 1e-13);
        const Complex at_zero = tc->laplace_exponent(Complex(0.0, 0.0), 3.0);
        CHECK(std::abs(at_zero) <= 1e-13);
    }
}

TEST_CASE("gamma clock closed form and Monte Carlo agreement") {
    const GammaSubordinator g(1.0, 0.0, 1.0);
    CHECK(g.laplace_exponent(1.0, 2.0) == doctest::Approx(1.3862943611198906).epsilon(1e-14));

    const SimConfig sim{.seed = 1234, .n_paths = 1000000};
    const auto mc = mc_laplace_transform(g, 1.0, 2.0, sim);
    CHECK(std::abs(mc.mean - std::exp(-g.laplace_exponent(1.0, 2.0))) <= 3.0 * mc.std_error);
}

TEST_CASE("deterministic clock is linear in u") {
    const ExponentialSubordinator model_a(1.0, 1.0, 0.0);  // drift only
    for (double u : {0.1, 1.0, 7.0}) {
        for (double t : {0.5, 4.0}) {
            CHECK(model_a.laplace_exponent(u, t) == doctest::Approx(t * u).epsilon(1e-15));
        }
    }
    CHECK(model_a.deterministic_value(3.0).value() == doctest::Approx(3.0));
}

TEST_CASE("branch-point domain errors") {
    const ExponentialSubordinator e(1.0, 0.5, 0.5);
    CHECK_THROWS_AS(e.laplace_exponent(-1.0, 1.0), std::invalid_argument);
    const GammaSubordinator g(2.0, 0.0, 2.0);
    CHECK_THROWS_AS(g.laplace_exponent(-2.0, 1.0), std::invalid_argument);
    const InverseGaussianSubordinator ig(1.0, 1.0);
    CHECK_THROWS_AS(ig.laplace_exponent(-0.5, 1.0), std::invalid_argument);
    const IntegratedCir cir(1.0, 1.0, 1.0, 1.0);
    CHECK_THROWS_AS(cir.laplace_exponent(-0.25, 1.0), std::invalid_argument);
    const IntegratedOuJump ou(1.0, 1.0, 1.0, 1.0);
    CHECK_THROWS_AS(ou.laplace_exponent(-1.0, 1.0), std::invalid_argument);
    // just inside the domain is fine
    CHECK_NOTHROW(cir.laplace_exponent(-0.2499, 1.0));
}

TEST_CASE("normalization flags enforce unit mean rate") {
    CHECK_THROWS_AS(ExponentialSubordinator(1.0, 0.5, 0.6, true), std::invalid_argument);
    CHECK_THROWS_AS(GammaSubordinator(2.0, 0.0, 1.0, true), std::invalid_argument);
    CHECK_THROWS_AS(InverseGaussianSubordinator(1.0, 1.5, true), std::invalid_argument);
    CHECK_THROWS_AS(IntegratedCir(2.0, 1.0, 1.0, 1.0, true), std::invalid_argument);
    CHECK_THROWS_AS(IntegratedOuJump(1.0, 1.0, 2.0, 1.0, true), std::invalid_argument);
    CHECK_NOTHROW(GammaSubordinator(10.0, 0.0, 10.0, true));
}

TEST_CASE("mean_rate of normalized families") {
    for (const auto& tc : unit_scale_families()) {
        CHECK(std::abs(mean_rate(*tc, 50.0) - 1.0) <= 1e-5);
    }
    // stationary affine families are exactly unit rate at all horizons
    const IntegratedCir cir(1.0, 1.0, 1.0, 1.0);
    const IntegratedOuJump ou(1.0, 1.0, 1.0, 1.0);
    for (double t : {0.1, 1.0, 5.0, 50.0}) {
        CHECK(std::abs(mean_rate(cir, t) - 1.0) <= 1e-6);
        CHECK(std::abs(mean_rate(ou, t) - 1.0) <= 1e-6);
    }
}

TEST_CASE("mean reversion pulls a displaced start back to unit rate") {
    const IntegratedCir cir(1.0, 1.0, 1.0, 2.0);
    // E[lambda_s] = 1 + e^{-s}, so E[G_t]/t = 1 + (1 - e^{-t})/t
    const double expected = 1.0 + (1.0 - std::exp(-50.0)) / 50.0;
    CHECK(mean_rate(cir, 50.0) == doctest::Approx(expected).epsilon(1e-6));
    CHECK(mean_rate(cir, 50.0) > 1.0);
    CHECK(mean_rate(cir, 200.0) < mean_rate(cir, 50.0));

    const SimConfig sim{.seed = 555, .n_paths = 20000, .dt = 1.0 / 100.0};
    const auto mc = mc_laplace_transform(cir, 0.02, 50.0, sim);
    CHECK(std::abs(mc.mean - std::exp(-cir.laplace_exponent(0.02, 50.0))) <=
          3.0 * mc.std_error);
}

TEST_CASE("affine small-t role: psi ~ u lambda0 t") {
    const IntegratedCir cir(0.7, 1.3, 0.9, 1.7);
    const IntegratedOuJump ou(1.1, 0.8, 1.2, 0.6);
    const double t = 1e-4;
    for (double u : {0.25, 1.0, 3.0}) {
        CHECK(cir.laplace_exponent(u, t) / (u * 1.7 * t) == doctest::Approx(1.0).epsilon(1e-5));
        CHECK(ou.laplace_exponent(u, t) / (u * 0.6 * t) == doctest::Approx(1.0).epsilon(1e-5));
    }
}

TEST_CASE("cumulants") {
    const ExponentialSubordinator model_a(1.0, 1.0, 0.0);
    CHECK(std::abs(cumulant(model_a, 2.0, 2)) <= 1e-8);  // deterministic clock

    const GammaSubordinator g(1.0, 0.0, 1.0);
    CHECK(cumulant(g, 3.0, 2) == doctest::Approx(3.0).epsilon(1e-6));  // t c / a^2
    CHECK(cumulant(g, 3.0, 1) == doctest::Approx(3.0).epsilon(1e-8));
    // third and fourth cumulants of the gamma process: 2 t c / a^3, 6 t c / a^4
    CHECK(cumulant(g, 3.0, 3) == doctest::Approx(6.0).epsilon(1e-4));
    CHECK(cumulant(g, 3.0, 4) == doctest::Approx(18.0).epsilon(1e-3));

    for (const auto& tc : unit_scale_families()) {
        CHECK(cumulant(*tc, 50.0, 1) == doctest::Approx(50.0).epsilon(1e-5));
        CHECK(cumulant(*tc, 2.0, 2) >= 0.0);
    }
    CHECK_THROWS_AS(cumulant(g, 1.0, 5), std::invalid_argument);
}

TEST_CASE("characteristic function of the time-changed increment") {
    const BrownianParams p{1.5, std::sqrt(0.0846), -0.5};
    const GammaSubordinator vg(1.0, 0.0, 1.0);
    CHECK(std::abs(tcbm_char_fn(vg, p, 0.0, 3.0) - 1.0) <= 1e-14);

    // deterministic clock reduces to the Brownian characteristic function
    const ExponentialSubordinator det(1.0, 1.0, 0.0);
    const BrownianParams pa{1.5, 0.3, -0.5};
    for (double u : {0.3, 1.0, 2.5}) {
        const double t = 2.0;
        const Complex expected =
            std::exp(Complex(-0.5 * 0.09 * u * u * t, -0.5 * 0.09 * u * t));
        CHECK(std::abs(tcbm_char_fn(det, pa, u, t) - expected) <= 1e-13);
        CHECK(std::abs(tcbm_char_fn(vg, p, u, t)) <= 1.0 + 1e-12);
    }

    const SimConfig sim{.seed = 808, .n_paths = 200000};
    const Complex analytic = tcbm_char_fn(vg, p, 1.0, 1.0);
    const auto re = mc_char_fn_real(vg, p, 1.0, 1.0, sim);
    const auto im = mc_char_fn_imag(vg, p, 1.0, 1.0, sim);
    CHECK(std::abs(re.mean - analytic.real()) <= 3.0 * re.std_error);
    CHECK(std::abs(im.mean - analytic.imag()) <= 3.0 * im.std_error);
}

TEST_CASE("convex combination is the sum of scaled parts") {
    auto g = std::make_shared<GammaSubordinator>(1.0, 0.0, 1.0);
    auto cir = std::make_shared<IntegratedCir>(1.0, 1.0, 1.0, 1.0);
    auto ou = std::make_shared<IntegratedOuJump>(1.0, 1.0, 1.0, 1.0);
    const ConvexCombination combo({{0.5, g}, {0.3, cir}, {0.2, ou}});
    for (double u : {0.2, 1.0, 4.0}) {
        for (double t : {0.5, 3.0}) {
            const double manual = g->laplace_exponent(0.5 * u, t) +
                                  cir->laplace_exponent(0.3 * u, t) +
                                  ou->laplace_exponent(0.2 * u, t);
            CHECK(combo.laplace_exponent(u, t) == doctest::Approx(manual).epsilon(1e-15));
        }
    }
    CHECK(combo.u_min() == doctest::Approx(-1.0 / 0.5));

    CHECK_THROWS_AS(ConvexCombination({{0.5, g}, {0.4, cir}}), std::invalid_argument);
    CHECK_THROWS_AS(ConvexCombination({{1.5, g}, {-0.5, cir}}), std::invalid_argument);
}

TEST_CASE("laplace transforms are completely monotone on the real axis") {
    for (const auto& tc : unit_scale_families()) {
        for (double t : {0.5, 2.0}) {
            std::vector<double> values;
            for (double u = 0.0; u <= 5.0; u += 0.25) {
                values.push_back(std::exp(-tc->laplace_exponent(u, t)));
            }
            for (std::size_t i = 0; i < values.size(); ++i) {
                CHECK(values[i] > 0.0);
                if (i >= 1) {
                    CHECK(values[i] <= values[i - 1] + 1e-14);
                }
                if (i >= 2) {
                    CHECK(values[i] - 2.0 * values[i - 1] + values[i - 2] >= -1e-12);
                }
            }
        }
    }
}

TEST_CASE("Monte Carlo agreement for every family") {
    const SimConfig levy_sim{.seed = 31337, .n_paths = 1000000};
    const SimConfig affine_sim{.seed = 31337, .n_paths = 150000, .dt = 1.0 / 250.0};
    for (const auto& tc : unit_scale_families()) {
        const bool affine = dynamic_cast<const IntegratedCir*>(tc.get()) != nullptr ||
                            dynamic_cast<const IntegratedOuJump*>(tc.get()) != nullptr;
        const SimConfig& sim = affine ? affine_sim : levy_sim;
        for (double u : {0.5, 1.0, 2.0}) {
            for (double t : {0.5, 2.0}) {
                const double analytic = std::exp(-tc->laplace_exponent(u, t));
                const auto mc = mc_laplace_transform(*tc, u, t, sim);
                INFO("u=", u, " t=", t);
                CHECK(std::abs(mc.mean - analytic) <= 3.0 * mc.std_error);
            }
        }
    }
}

TEST_CASE("atoms and floors of finite-activity clocks") {
    const ExponentialSubordinator e(1.0, 0.3, 0.7, true);
    CHECK(e.deterministic_floor(2.0) == doctest::Approx(0.6));
    CHECK(e.atom_mass(2.0) == doctest::Approx(std::exp(-1.4)).epsilon(1e-14));

    const IntegratedOuJump ou(1.0, 1.0, 1.0, 0.5);
    CHECK(ou.deterministic_floor(2.0) == doctest::Approx(0.5 * (1.0 - std::exp(-2.0))));
    CHECK(ou.atom_mass(2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));

    const GammaSubordinator g(1.0, 0.25, 0.75, true);
    CHECK(g.atom_mass(2.0) == 0.0);
    CHECK(g.deterministic_floor(2.0) == doctest::Approx(0.5));

    auto ge = std::make_shared<GammaSubordinator>(1.0, 0.0, 1.0);
    auto ee = std::make_shared<ExponentialSubordinator>(1.0, 0.3, 0.7);
    const ConvexCombination combo({{0.4, ge}, {0.6, ee}});
    CHECK(combo.deterministic_floor(2.0) == doctest::Approx(0.6 * 0.6));
    CHECK(combo.atom_mass(2.0) == 0.0);  // the gamma part smears everything
}
