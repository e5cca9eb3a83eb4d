#include "tcbm/credit.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace tcbm {

namespace {

constexpr double kWeightTol = 1e-12;
constexpr double kDegenerateX = 1e-10;

double rate_exponent(const FirmCredit& firm, double maturity) {
    double e = firm.rate_base.laplace_exponent(1.0, maturity);
    if (firm.m1 > 0.0) {
        e += firm.tc1.laplace_exponent(firm.m1, maturity);
    }
    if (firm.m2 > 0.0) {
        e += firm.tc2.laplace_exponent(firm.m2, maturity);
    }
    return e;
}

}  // namespace

void FirmCredit::validate() const {
    brownian.validate_passage();
    if (!(brownian.beta < 0.0)) {
        throw std::invalid_argument("FirmCredit: beta must be negative");
    }
    for (double a : {alpha1, alpha2, alpha3}) {
        if (!(a >= 0.0) || !(a <= 1.0)) {
            throw std::invalid_argument("FirmCredit: alphas must lie in [0, 1]");
        }
    }
    if (std::abs(alpha1 + alpha2 + alpha3 - 1.0) > kWeightTol) {
        throw std::invalid_argument("FirmCredit: alpha1 + alpha2 + alpha3 must equal 1");
    }
    if (alpha3 > 0.0 && !tc3) {
        throw std::invalid_argument("FirmCredit: tc3 required when alpha3 > 0");
    }
    if (!(m1 >= 0.0) || !(m2 >= 0.0)) {
        throw std::invalid_argument("FirmCredit: rate loadings m1, m2 must be >= 0");
    }
    if (!(recovery >= 0.0) || !(recovery < 1.0)) {
        throw std::invalid_argument("FirmCredit: recovery must lie in [0, 1)");
    }
}

ConvexCombination FirmCredit::combined_change() const {
    validate();
    std::vector<ConvexCombination::Part> parts;
    parts.emplace_back(alpha1, std::make_shared<IntegratedCir>(tc1));
    parts.emplace_back(alpha2, std::make_shared<IntegratedOuJump>(tc2));
    if (tc3) {
        parts.emplace_back(alpha3, tc3);
    } else {
        parts.emplace_back(alpha3, std::make_shared<ExponentialSubordinator>(1.0, 1.0, 0.0));
    }
    return ConvexCombination(std::move(parts));
}

double default_probability(const FirmCredit& firm, double t, const QuadratureConfig& q) {
    firm.validate();
    if (!(t >= 0.0)) {
        throw std::invalid_argument("default_probability: t must be >= 0");
    }
    if (t == 0.0) {
        return 0.0;
    }
    const ConvexCombination combined = firm.combined_change();
    return second_passage_cdf(t, firm.brownian, combined, q);
}

double riskfree_bond(const FirmCredit& firm, double maturity) {
    firm.validate();
    if (!(maturity >= 0.0)) {
        throw std::invalid_argument("riskfree_bond: maturity must be >= 0");
    }
    if (maturity == 0.0) {
        return 1.0;
    }
    return std::exp(-rate_exponent(firm, maturity));
}

double zero_recovery_bond(const FirmCredit& firm, double maturity, const QuadratureConfig& q) {
    firm.validate();
    q.validate();
    if (!(maturity >= 0.0)) {
        throw std::invalid_argument("zero_recovery_bond: maturity must be >= 0");
    }
    if (maturity == 0.0) {
        return 1.0;
    }
    if (firm.brownian.x <= kDegenerateX) {
        return 0.0;  // immediate default
    }
    const double discount = std::exp(-firm.rate_base.laplace_exponent(1.0, maturity));
    // Rate loadings couple into the clock exponents through shifted arguments.
    auto exponent = [&](double u) {
        double e = firm.tc1.laplace_exponent(firm.m1 + firm.alpha1 * u, maturity);
        e += firm.tc2.laplace_exponent(firm.m2 + firm.alpha2 * u, maturity);
        if (firm.tc3 && firm.alpha3 > 0.0) {
            e += firm.tc3->laplace_exponent(firm.alpha3 * u, maturity);
        }
        return e;
    };
    const double kernel = detail::sine_kernel_transform(firm.brownian, exponent, q);
    const double prefactor = std::exp(-firm.brownian.beta * firm.brownian.x);
    const double value = discount * prefactor * kernel;
    const double riskfree = riskfree_bond(firm, maturity);
    const double slack = q.abs_tol * 10.0 * (1.0 + prefactor);
    return detail::clip_to_range(value, 0.0, riskfree, slack, "zero_recovery_bond");
}

double recovery_bond(const FirmCredit& firm, double maturity, const QuadratureConfig& q) {
    const double zero_rec = zero_recovery_bond(firm, maturity, q);
    const double riskfree = riskfree_bond(firm, maturity);
    return (1.0 - firm.recovery) * zero_rec + firm.recovery * riskfree;
}

CdsLegs cds_legs(const FirmCredit& firm, double maturity, int n_time_steps,
                 const QuadratureConfig& q, bool printed_default_leg_factor) {
    firm.validate();
    if (!(maturity > 0.0)) {
        throw std::invalid_argument("cds_legs: maturity must be positive");
    }
    if (n_time_steps < 2) {
        throw std::invalid_argument("cds_legs: n_time_steps must be at least 2");
    }
    if (printed_default_leg_factor && firm.recovery == 0.0) {
        throw std::invalid_argument(
            "cds_legs: the printed (1-R)/R default-leg factor is undefined at R = 0");
    }

    auto simpson = [&](int n) {
        if (n % 2 != 0) {
            ++n;
        }
        const double h = maturity / n;
        double acc = 1.0 + zero_recovery_bond(firm, maturity, q);  // endpoints; value 1 at t=0
        for (int i = 1; i < n; ++i) {
            const double weight = (i % 2 == 1) ? 4.0 : 2.0;
            acc += weight * zero_recovery_bond(firm, i * h, q);
        }
        return acc * h / 3.0;
    };

    int n = n_time_steps;
    double premium = simpson(n);
    for (int round = 0; round < 5; ++round) {
        n *= 2;
        const double refined = simpson(n);
        const bool done = std::abs(refined - premium) < 1e-8 * std::max(refined, 1e-30);
        premium = refined;
        if (done) {
            break;
        }
    }

    const double riskfree = riskfree_bond(firm, maturity);
    const double zero_rec = zero_recovery_bond(firm, maturity, q);
    const double factor = printed_default_leg_factor
                              ? (1.0 - firm.recovery) / firm.recovery
                              : (1.0 - firm.recovery);
    return {premium, factor * (riskfree - zero_rec)};
}

double cds_spread(const FirmCredit& firm, double maturity, int n_time_steps,
                  const QuadratureConfig& q) {
    const CdsLegs legs = cds_legs(firm, maturity, n_time_steps, q);
    return legs.default_leg / legs.premium_unit;
}

double yield_spread(const FirmCredit& firm, double maturity, const QuadratureConfig& q) {
    if (!(maturity > 0.0)) {
        throw std::invalid_argument("yield_spread: maturity must be positive");
    }
    const double zero_rec = zero_recovery_bond(firm, maturity, q);
    const double riskfree = riskfree_bond(firm, maturity);
    return -std::log(zero_rec / riskfree) / maturity;
}

}  // namespace tcbm
