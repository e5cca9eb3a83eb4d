#include "tcbm/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tcbm {

namespace {

constexpr double kSqrt2 = 1.41421356237309505;
constexpr double kLogSqrt2Pi = 0.91893853320467274;

}  // namespace

void BrownianParams::validate() const {
    if (!std::isfinite(x) || !std::isfinite(sigma) || !std::isfinite(beta)) {
        throw std::invalid_argument("BrownianParams: non-finite parameter");
    }
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("BrownianParams: sigma must be positive");
    }
}

void BrownianParams::validate_passage() const {
    validate();
    if (!(x > 0.0)) {
        throw std::invalid_argument("BrownianParams: x must be positive for passage quantities");
    }
}

double norm_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

double log_norm_cdf(double z) {
    if (z > -36.0) {
        return std::log(norm_cdf(z));
    }
    // Mills-ratio asymptotics; erfc underflows near z = -37.5.
    const double z2 = z * z;
    const double z4 = z2 * z2;
    const double series = -1.0 / z2 + 3.0 / z4 - 15.0 / (z4 * z2) + 105.0 / (z4 * z4);
    return -0.5 * z2 - kLogSqrt2Pi - std::log(-z) + std::log1p(series);
}

double passage_cdf(double t, const BrownianParams& p) {
    p.validate_passage();
    if (!(t > 0.0)) {
        throw std::invalid_argument("passage_cdf: t must be positive");
    }
    const double s = p.sigma * std::sqrt(t);
    const double drift_t = p.drift_rate() * t;
    const double z1 = (-p.x - drift_t) / s;
    const double z2 = (-p.x + drift_t) / s;
    // The reflected term exp(-2 beta x) N(z2) overflows x underflows when
    // beta x is very negative; combine in log space.
    const double value = norm_cdf(z1) + std::exp(-2.0 * p.beta * p.x + log_norm_cdf(z2));
    return std::clamp(value, 0.0, 1.0);
}

double passage_laplace_exponent(double u, const BrownianParams& p) {
    p.validate_passage();
    const double s2 = p.sigma * p.sigma;
    const double bound = -0.5 * p.beta * p.beta * s2;
    if (!(u > bound)) {
        throw std::invalid_argument(
            "passage_laplace_exponent: u must exceed -beta^2 sigma^2 / 2");
    }
    if (u == 0.0 && p.beta <= 0.0) {
        return 0.0;  // passage is almost sure
    }
    return p.x * (p.beta + std::sqrt(p.beta * p.beta + 2.0 * u / s2));
}

double survival_above(double t, double level, const BrownianParams& p) {
    p.validate_passage();
    if (!(t > 0.0)) {
        throw std::invalid_argument("survival_above: t must be positive");
    }
    if (!(level >= 0.0)) {
        throw std::invalid_argument("survival_above: level must be nonnegative");
    }
    const double s = p.sigma * std::sqrt(t);
    const double drift_t = p.drift_rate() * t;
    const double z1 = (p.x - level + drift_t) / s;
    const double z2 = (-p.x - level + drift_t) / s;
    const double value = norm_cdf(z1) - std::exp(-2.0 * p.beta * p.x + log_norm_cdf(z2));
    return std::clamp(value, 0.0, 1.0);
}

}  // namespace tcbm
