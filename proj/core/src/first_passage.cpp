#include "tcbm/first_passage.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tcbm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegenerateX = 1e-10;

// Contour height for the density transforms: the real axis when beta < 0,
// shifted above the z = i beta pole otherwise.
double contour_eps(double beta) { return beta < 0.0 ? 0.0 : beta + 0.1; }

void check_contour_domain(double eps, const BrownianParams& p, const TimeChange& tc) {
    const double s2 = p.sigma * p.sigma;
    const double floor_arg = 0.5 * s2 * (p.beta * p.beta - eps * eps);
    if (!(floor_arg > tc.u_min())) {
        throw std::invalid_argument(
            "density transform: shifted contour leaves the Laplace-exponent domain");
    }
}

// Re Int_0^inf e^{i s w} exp(-psi(sigma^2 ((s + i eps)^2 + beta^2)/2, t)) ds.
double shifted_cos_transform(double t, double w, double eps, const BrownianParams& p,
                             const TimeChange& tc, const QuadratureConfig& q) {
    const double s2 = p.sigma * p.sigma;
    const double beta = p.beta;
    const double width = kPi / std::max(std::abs(w), 1e-3);
    if (eps == 0.0) {
        auto f = [&](double s) {
            const double u = 0.5 * s2 * (s * s + beta * beta);
            return std::cos(s * w) * std::exp(-tc.laplace_exponent(u, t));
        };
        return oscillating_integral(f, 0.5 * width, width, q);
    }
    auto f = [&](double s) -> Complex {
        const Complex z(s, eps);
        const Complex arg = 0.5 * s2 * (z * z + beta * beta);
        return std::exp(Complex(0.0, s * w) - tc.laplace_exponent(arg, t));
    };
    return oscillating_integral_complex(f, 0.5 * width, width, q).real();
}

}  // namespace

namespace detail {

double sine_kernel_transform(const BrownianParams& p,
                             const std::function<double(double)>& exponent,
                             const QuadratureConfig& q) {
    const double x = p.x;
    const double beta = p.beta;
    const double s2 = p.sigma * p.sigma;
    auto f = [&](double z) {
        const double zz = z * z + beta * beta;
        const double e = exponent(0.5 * s2 * zz);
        if (zz == 0.0) {
            return x * std::exp(-e);  // beta = 0 limit of z sin(z x)/z^2 at z = 0
        }
        return z * std::sin(z * x) / zz * std::exp(-e);
    };
    const double width = kPi / x;
    return (2.0 / kPi) * oscillating_integral(f, width, width, q);
}

double clip_to_range(double v, double lo, double hi, double slack, const char* what) {
    if (v < lo - slack || v > hi + slack) {
        std::ostringstream msg;
        msg << what << ": value " << v << " outside [" << lo << ", " << hi
            << "] beyond the accuracy budget " << slack;
        throw NumericalError(msg.str());
    }
    return std::clamp(v, lo, hi);
}

}  // namespace detail

double DensityTable::total_mass() const {
    return std::accumulate(w.begin(), w.end(), 0.0) + atom_mass;
}

double DensityTable::mean() const {
    double acc = atom_y * atom_mass;
    for (std::size_t j = 0; j < y.size(); ++j) {
        acc += y[j] * w[j];
    }
    return acc;
}

DensityTable DensityTable::from_density(const std::function<double(double)>& rho, double lo,
                                        double hi, int n) {
    if (!(hi > lo) || n < 2) {
        throw std::invalid_argument("DensityTable::from_density: bad grid");
    }
    DensityTable table;
    table.step = (hi - lo) / n;
    table.y.resize(n);
    table.w.resize(n);
    for (int j = 0; j < n; ++j) {
        table.y[j] = lo + (j + 0.5) * table.step;
        table.w[j] = rho(table.y[j]) * table.step;
    }
    table.raw_mass = table.total_mass();
    return table;
}

double second_passage_cdf(double t, const BrownianParams& p, const TimeChange& tc,
                          const QuadratureConfig& q) {
    p.validate();
    q.validate();
    if (!(t >= 0.0)) {
        throw std::invalid_argument("second_passage_cdf: t must be >= 0");
    }
    if (!(p.x > 0.0)) {
        throw std::invalid_argument("second_passage_cdf: x must be positive");
    }
    if (p.x <= kDegenerateX) {
        return 1.0;  // started at the barrier
    }
    if (t == 0.0) {
        return 0.0;
    }
    const double constant = p.beta > 0.0 ? std::exp(-2.0 * p.beta * p.x) : 1.0;
    const double kernel =
        detail::sine_kernel_transform(p, [&](double u) { return tc.laplace_exponent(u, t); }, q);
    const double value = constant - std::exp(-p.beta * p.x) * kernel;
    const double slack = q.abs_tol * 10.0 * (1.0 + std::exp(-p.beta * p.x));
    return detail::clip_to_range(value, 0.0, 1.0, slack, "second_passage_cdf");
}

double second_passage_cdf_from_density(const BrownianParams& p, const DensityTable& gt) {
    p.validate_passage();
    const double mass = gt.total_mass();
    if (std::abs(mass - 1.0) > 1e-6) {
        throw std::invalid_argument(
            "second_passage_cdf_from_density: density must integrate to 1 within 1e-6");
    }
    double acc = 0.0;
    if (gt.atom_mass > 0.0 && gt.atom_y > 0.0) {
        acc += gt.atom_mass * passage_cdf(gt.atom_y, p);
    }
    for (std::size_t j = 0; j < gt.y.size(); ++j) {
        if (gt.y[j] > 0.0 && gt.w[j] != 0.0) {
            acc += gt.w[j] * passage_cdf(gt.y[j], p);
        }
    }
    return std::clamp(acc, 0.0, 1.0);
}

double surviving_density(double t, double l, const BrownianParams& p, const TimeChange& tc,
                         const QuadratureConfig& q) {
    p.validate_passage();
    q.validate();
    if (!(t > 0.0)) {
        throw std::invalid_argument("surviving_density: t must be positive");
    }
    if (!(l > 0.0)) {
        return 0.0;
    }
    const double eps = contour_eps(p.beta);
    check_contour_domain(eps, p, tc);
    const double w_minus = l - p.x;
    const double w_plus = l + p.x;
    const double c_minus = shifted_cos_transform(t, w_minus, eps, p, tc, q);
    const double c_plus = shifted_cos_transform(t, w_plus, eps, p, tc, q);
    const double value = std::exp(p.beta * w_minus) / kPi *
                         (std::exp(-eps * w_minus) * c_minus - std::exp(-eps * w_plus) * c_plus);
    return std::max(value, 0.0);
}

double defaulted_density(double t, double l, const BrownianParams& p, const TimeChange& tc,
                         const QuadratureConfig& q) {
    p.validate_passage();
    q.validate();
    if (!(t > 0.0)) {
        throw std::invalid_argument("defaulted_density: t must be positive");
    }
    const double eps = contour_eps(p.beta);
    check_contour_domain(eps, p, tc);
    const double w = p.x + std::abs(l);
    const double c = shifted_cos_transform(t, w, eps, p, tc, q);
    const double value = std::exp(p.beta * (l - p.x)) / kPi * std::exp(-eps * w) * c;
    return std::max(value, 0.0);
}

double tcbm_density(double t, double l, const BrownianParams& p, const TimeChange& tc,
                    const QuadratureConfig& q) {
    p.validate();
    q.validate();
    if (!(t > 0.0)) {
        throw std::invalid_argument("tcbm_density: t must be positive");
    }
    const double s2 = p.sigma * p.sigma;
    const double w = l - p.x;
    auto f = [&](double k) -> Complex {
        const Complex arg(0.5 * s2 * k * k, -s2 * p.beta * k);
        return std::exp(Complex(0.0, -k * w) - tc.laplace_exponent(arg, t));
    };
    const double width = kPi / std::max(std::abs(w), 1e-3);
    const double value = oscillating_integral_complex(f, 0.5 * width, width, q).real() / kPi;
    return std::max(value, 0.0);
}

Complex survival_char_fn(Complex k, double t, const BrownianParams& p, const TimeChange& tc,
                         const QuadratureConfig& q) {
    p.validate_passage();
    q.validate();
    if (!(k.imag() > 0.0)) {
        throw std::invalid_argument("survival_char_fn: k must lie in the upper half plane");
    }
    if (!(t >= 0.0)) {
        throw std::invalid_argument("survival_char_fn: t must be >= 0");
    }
    if (t == 0.0) {
        return std::exp(Complex(-p.beta * p.x, 0.0) + Complex(0.0, 1.0) * k * p.x);
    }
    const double s2 = p.sigma * p.sigma;
    const double x = p.x;
    const double beta = p.beta;
    const Complex k2 = k * k;
    auto f = [&](double z) -> Complex {
        const double u = 0.5 * s2 * (z * z + beta * beta);
        const double damp = std::exp(-tc.laplace_exponent(u, t));
        return z * std::sin(z * x) / (z * z - k2) * damp;
    };
    const double width = kPi / x;
    const Complex integral = oscillating_integral_complex(f, width, width, q);
    return std::exp(-beta * x) * (2.0 / kPi) * integral;
}

}  // namespace tcbm
