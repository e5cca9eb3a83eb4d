#include "tcbm/time_change.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tcbm {

namespace {

constexpr double kNormalizationTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite_nonneg(double v, const char* name, const char* who) {
    if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument(std::string(who) + ": " + name + " must be finite and >= 0");
    }
}

void require_positive(double v, const char* name, const char* who) {
    if (!std::isfinite(v) || !(v > 0.0)) {
        throw std::invalid_argument(std::string(who) + ": " + name + " must be positive");
    }
}

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument("TimeChange: t must be finite and >= 0");
    }
}

void check_normalized(bool required, double gap, const char* who) {
    if (required && !(std::abs(gap) <= kNormalizationTol)) {
        throw std::invalid_argument(std::string(who) +
                                    ": normalization requested but mean rate differs from 1");
    }
}

inline double expm1_c(double z) { return std::expm1(z); }

// expm1 for complex arguments without cancellation near 0.
inline Complex expm1_c(Complex z) {
    const double x = z.real();
    const double y = z.imag();
    const double em = std::expm1(x);
    const double cy = std::cos(y);
    const double sy = std::sin(y);
    const double half = std::sin(0.5 * y);
    return {em * cy - 2.0 * half * half, std::exp(x) * sy};
}

inline double real_part(double v) { return v; }
inline double real_part(Complex v) { return v.real(); }

template <class T>
T exponential_psi(double a, double b, double c, T u, double t) {
    return t * (b * u + c * u / (a + u));
}

template <class T>
T gamma_psi(double a, double b, double c, T u, double t) {
    if constexpr (std::is_same_v<T, double>) {
        return t * (b * u + c * std::log1p(u / a));
    } else {
        return t * (b * u + c * std::log(1.0 + u / a));
    }
}

template <class T>
T ig_psi(double beta_tilde, double gamma_tilde, T u, double t) {
    // sqrt(bt^2 + 2u) - bt written as 2u / (sqrt(bt^2 + 2u) + bt): exact at
    // u = 0 and free of cancellation for small u.
    const T root = std::sqrt(beta_tilde * beta_tilde + 2.0 * u);
    return gamma_tilde * t * (2.0 * u / (root + beta_tilde));
}

template <class T>
struct CirAffine {
    T loading;
    T offset;
};

template <class T>
CirAffine<T> cir_affine(double a, double b, double c, T u, double t) {
    const T gamma = std::sqrt(b * b + 4.0 * c * u);
    const T kappa1 = (b + gamma) / (2.0 * c);
    const T kappa2 = (b - gamma) / (2.0 * c);
    const T w = (b + gamma) / (2.0 * gamma);
    T log1p_d;   // log(1 + D), D = w (e^{gamma t} - 1)
    T inv1p_d;   // 1 / (1 + D)
    if (real_part(gamma) * t > 30.0) {
        // factor out e^{gamma t} so nothing overflows
        const T egt = std::exp(-gamma * t);
        const T denom = w + (1.0 - w) * egt;
        log1p_d = gamma * t + std::log(denom);
        inv1p_d = egt / denom;
    } else {
        const T d = w * expm1_c(gamma * t);
        log1p_d = std::log(1.0 + d);
        inv1p_d = 1.0 / (1.0 + d);
    }
    CirAffine<T> out;
    out.loading = kappa2 * (inv1p_d - 1.0);
    out.offset = -a * kappa1 * t + (a / c) * log1p_d;
    return out;
}

// Deterministic c = 0 limit: integrated mean-reverting flow.
double cir_deterministic_integral(double a, double b, double lambda0, double t) {
    const double mean = a / b;
    return mean * t + (lambda0 - mean) * (-std::expm1(-b * t)) / b;
}

template <class T>
struct OuAffine {
    T loading;
    T offset;
};

template <class T>
OuAffine<T> ou_affine(double a, double b, double c, T u, double t) {
    OuAffine<T> out;
    const double decay = -std::expm1(-b * t);  // 1 - e^{-b t}
    out.loading = u * (decay / b);
    if (c == 0.0) {
        out.offset = T{};
        return out;
    }
    // log(((ab+u) e^{bt} - u)/(ab)) = b t + log((ab + u (1 - e^{-bt}))/(ab));
    // the argument stays in the right half plane for Re(u) > -a b.
    const T lg = b * t + std::log((a * b + u * decay) / (a * b));
    out.offset = c * t - (a * c / (a * b + u)) * lg;
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// TimeChange base

std::optional<double> TimeChange::deterministic_value(double) const { return std::nullopt; }

double TimeChange::deterministic_floor(double) const { return 0.0; }

double TimeChange::atom_mass(double) const { return 0.0; }

void TimeChange::require_domain(double re_u, double t) const {
    require_time(t);
    if (!(re_u > u_min())) {
        throw std::invalid_argument("TimeChange: Laplace exponent argument at or below the branch point");
    }
}

// ---------------------------------------------------------------------------
// ExponentialSubordinator

ExponentialSubordinator::ExponentialSubordinator(double a, double b, double c,
                                                 bool require_normalized)
    : a_(a), b_(b), c_(c) {
    require_positive(a, "a", "ExponentialSubordinator");
    require_finite_nonneg(b, "b", "ExponentialSubordinator");
    require_finite_nonneg(c, "c", "ExponentialSubordinator");
    check_normalized(require_normalized, b_ + c_ / a_ - 1.0, "ExponentialSubordinator");
}

double ExponentialSubordinator::laplace_exponent(double u, double t) const {
    require_domain(u, t);
    return exponential_psi(a_, b_, c_, u, t);
}

Complex ExponentialSubordinator::laplace_exponent(Complex u, double t) const {
    require_domain(u.real(), t);
    return exponential_psi(a_, b_, c_, u, t);
}

double ExponentialSubordinator::u_min() const { return -a_; }

std::optional<double> ExponentialSubordinator::deterministic_value(double t) const {
    if (c_ == 0.0) {
        return b_ * t;
    }
    return std::nullopt;
}

double ExponentialSubordinator::atom_mass(double t) const {
    return c_ == 0.0 ? 1.0 : std::exp(-c_ * t);
}

std::unique_ptr<TimeChange> ExponentialSubordinator::clone() const {
    return std::make_unique<ExponentialSubordinator>(*this);
}

// ---------------------------------------------------------------------------
// GammaSubordinator

GammaSubordinator::GammaSubordinator(double a, double b, double c, bool require_normalized)
    : a_(a), b_(b), c_(c) {
    require_positive(a, "a", "GammaSubordinator");
    require_finite_nonneg(b, "b", "GammaSubordinator");
    require_positive(c, "c", "GammaSubordinator");
    check_normalized(require_normalized, b_ + c_ / a_ - 1.0, "GammaSubordinator");
}

double GammaSubordinator::laplace_exponent(double u, double t) const {
    require_domain(u, t);
    return gamma_psi(a_, b_, c_, u, t);
}

Complex GammaSubordinator::laplace_exponent(Complex u, double t) const {
    require_domain(u.real(), t);
    return gamma_psi(a_, b_, c_, u, t);
}

double GammaSubordinator::u_min() const { return -a_; }

std::unique_ptr<TimeChange> GammaSubordinator::clone() const {
    return std::make_unique<GammaSubordinator>(*this);
}

// ---------------------------------------------------------------------------
// InverseGaussianSubordinator

InverseGaussianSubordinator::InverseGaussianSubordinator(double beta_tilde, double gamma_tilde,
                                                         bool require_normalized)
    : beta_tilde_(beta_tilde), gamma_tilde_(gamma_tilde) {
    require_positive(beta_tilde, "beta_tilde", "InverseGaussianSubordinator");
    require_positive(gamma_tilde, "gamma_tilde", "InverseGaussianSubordinator");
    check_normalized(require_normalized, gamma_tilde_ / beta_tilde_ - 1.0,
                     "InverseGaussianSubordinator");
}

double InverseGaussianSubordinator::laplace_exponent(double u, double t) const {
    require_domain(u, t);
    return ig_psi(beta_tilde_, gamma_tilde_, u, t);
}

Complex InverseGaussianSubordinator::laplace_exponent(Complex u, double t) const {
    require_domain(u.real(), t);
    return ig_psi(beta_tilde_, gamma_tilde_, u, t);
}

double InverseGaussianSubordinator::u_min() const { return -0.5 * beta_tilde_ * beta_tilde_; }

std::unique_ptr<TimeChange> InverseGaussianSubordinator::clone() const {
    return std::make_unique<InverseGaussianSubordinator>(*this);
}

// ---------------------------------------------------------------------------
// IntegratedCir

IntegratedCir::IntegratedCir(double a, double b, double c, double lambda0,
                             bool require_normalized)
    : a_(a), b_(b), c_(c), lambda0_(lambda0) {
    require_finite_nonneg(a, "a", "IntegratedCir");
    require_positive(b, "b", "IntegratedCir");
    require_finite_nonneg(c, "c", "IntegratedCir");
    require_finite_nonneg(lambda0, "lambda0", "IntegratedCir");
    check_normalized(require_normalized, a_ / b_ - 1.0, "IntegratedCir");
}

IntegratedCir IntegratedCir::with_initial(double lambda0) const {
    return IntegratedCir(a_, b_, c_, lambda0);
}

double IntegratedCir::loading(double u, double t) const {
    require_domain(u, t);
    if (c_ == 0.0) {
        return u * (-std::expm1(-b_ * t) / b_);
    }
    return cir_affine(a_, b_, c_, u, t).loading;
}

Complex IntegratedCir::loading(Complex u, double t) const {
    require_domain(u.real(), t);
    if (c_ == 0.0) {
        return u * (-std::expm1(-b_ * t) / b_);
    }
    return cir_affine(a_, b_, c_, u, t).loading;
}

double IntegratedCir::offset(double u, double t) const {
    require_domain(u, t);
    if (c_ == 0.0) {
        const double mean = a_ / b_;
        return u * (mean * t - mean * (-std::expm1(-b_ * t)) / b_);
    }
    return cir_affine(a_, b_, c_, u, t).offset;
}

Complex IntegratedCir::offset(Complex u, double t) const {
    require_domain(u.real(), t);
    if (c_ == 0.0) {
        const double mean = a_ / b_;
        return u * (mean * t - mean * (-std::expm1(-b_ * t)) / b_);
    }
    return cir_affine(a_, b_, c_, u, t).offset;
}

double IntegratedCir::laplace_exponent(double u, double t) const {
    require_domain(u, t);
    if (c_ == 0.0) {
        return u * cir_deterministic_integral(a_, b_, lambda0_, t);
    }
    const auto ab = cir_affine(a_, b_, c_, u, t);
    return lambda0_ * ab.loading + ab.offset;
}

Complex IntegratedCir::laplace_exponent(Complex u, double t) const {
    require_domain(u.real(), t);
    if (c_ == 0.0) {
        return u * cir_deterministic_integral(a_, b_, lambda0_, t);
    }
    const auto ab = cir_affine(a_, b_, c_, u, t);
    return lambda0_ * ab.loading + ab.offset;
}

double IntegratedCir::u_min() const {
    return c_ == 0.0 ? -kInf : -b_ * b_ / (4.0 * c_);
}

std::optional<double> IntegratedCir::deterministic_value(double t) const {
    if (c_ == 0.0) {
        return cir_deterministic_integral(a_, b_, lambda0_, t);
    }
    if (a_ == 0.0 && lambda0_ == 0.0) {
        return 0.0;  // intensity stays at zero
    }
    return std::nullopt;
}

std::unique_ptr<TimeChange> IntegratedCir::clone() const {
    return std::make_unique<IntegratedCir>(*this);
}

// ---------------------------------------------------------------------------
// IntegratedOuJump

IntegratedOuJump::IntegratedOuJump(double a, double b, double c, double lambda0,
                                   bool require_normalized)
    : a_(a), b_(b), c_(c), lambda0_(lambda0) {
    require_positive(a, "a", "IntegratedOuJump");
    require_positive(b, "b", "IntegratedOuJump");
    require_finite_nonneg(c, "c", "IntegratedOuJump");
    require_finite_nonneg(lambda0, "lambda0", "IntegratedOuJump");
    check_normalized(require_normalized, c_ / (a_ * b_) - 1.0, "IntegratedOuJump");
}

IntegratedOuJump IntegratedOuJump::with_initial(double lambda0) const {
    return IntegratedOuJump(a_, b_, c_, lambda0);
}

double IntegratedOuJump::decay_integral(double t) const { return -std::expm1(-b_ * t) / b_; }

double IntegratedOuJump::loading(double u, double t) const {
    require_domain(u, t);
    return ou_affine(a_, b_, c_, u, t).loading;
}

Complex IntegratedOuJump::loading(Complex u, double t) const {
    require_domain(u.real(), t);
    return ou_affine(a_, b_, c_, u, t).loading;
}

double IntegratedOuJump::offset(double u, double t) const {
    require_domain(u, t);
    return ou_affine(a_, b_, c_, u, t).offset;
}

Complex IntegratedOuJump::offset(Complex u, double t) const {
    require_domain(u.real(), t);
    return ou_affine(a_, b_, c_, u, t).offset;
}

double IntegratedOuJump::laplace_exponent(double u, double t) const {
    require_domain(u, t);
    const auto ab = ou_affine(a_, b_, c_, u, t);
    return lambda0_ * ab.loading + ab.offset;
}

Complex IntegratedOuJump::laplace_exponent(Complex u, double t) const {
    require_domain(u.real(), t);
    const auto ab = ou_affine(a_, b_, c_, u, t);
    return lambda0_ * ab.loading + ab.offset;
}

double IntegratedOuJump::u_min() const {
    return c_ == 0.0 ? -kInf : -a_ * b_;
}

std::optional<double> IntegratedOuJump::deterministic_value(double t) const {
    if (c_ == 0.0) {
        return lambda0_ * decay_integral(t);
    }
    return std::nullopt;
}

double IntegratedOuJump::deterministic_floor(double t) const {
    return lambda0_ * decay_integral(t);
}

double IntegratedOuJump::atom_mass(double t) const {
    if (c_ == 0.0) {
        return 1.0;
    }
    return std::exp(-c_ * t);  // no jump of the driver by t
}

std::unique_ptr<TimeChange> IntegratedOuJump::clone() const {
    return std::make_unique<IntegratedOuJump>(*this);
}

// ---------------------------------------------------------------------------
// ConvexCombination

ConvexCombination::ConvexCombination(std::vector<Part> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) {
        throw std::invalid_argument("ConvexCombination: needs at least one part");
    }
    double sum = 0.0;
    for (const auto& [w, tc] : parts_) {
        if (!std::isfinite(w) || w < 0.0 || w > 1.0) {
            throw std::invalid_argument("ConvexCombination: weights must lie in [0, 1]");
        }
        if (!tc) {
            throw std::invalid_argument("ConvexCombination: null part");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > kNormalizationTol) {
        throw std::invalid_argument("ConvexCombination: weights must sum to 1");
    }
}

double ConvexCombination::laplace_exponent(double u, double t) const {
    double acc = 0.0;
    for (const auto& [w, tc] : parts_) {
        if (w > 0.0) {
            acc += tc->laplace_exponent(w * u, t);
        }
    }
    return acc;
}

Complex ConvexCombination::laplace_exponent(Complex u, double t) const {
    Complex acc{};
    for (const auto& [w, tc] : parts_) {
        if (w > 0.0) {
            acc += tc->laplace_exponent(w * u, t);
        }
    }
    return acc;
}

double ConvexCombination::u_min() const {
    double bound = -kInf;
    for (const auto& [w, tc] : parts_) {
        if (w > 0.0) {
            bound = std::max(bound, tc->u_min() / w);
        }
    }
    return bound;
}

std::optional<double> ConvexCombination::deterministic_value(double t) const {
    double acc = 0.0;
    for (const auto& [w, tc] : parts_) {
        if (w == 0.0) {
            continue;
        }
        const auto v = tc->deterministic_value(t);
        if (!v) {
            return std::nullopt;
        }
        acc += w * *v;
    }
    return acc;
}

double ConvexCombination::deterministic_floor(double t) const {
    double acc = 0.0;
    for (const auto& [w, tc] : parts_) {
        if (w > 0.0) {
            acc += w * tc->deterministic_floor(t);
        }
    }
    return acc;
}

double ConvexCombination::atom_mass(double t) const {
    double acc = 1.0;
    for (const auto& [w, tc] : parts_) {
        if (w > 0.0) {
            acc *= tc->atom_mass(t);
        }
    }
    return acc;
}

std::unique_ptr<TimeChange> ConvexCombination::clone() const {
    return std::make_unique<ConvexCombination>(*this);
}

// ---------------------------------------------------------------------------
// Derived quantities

namespace {

double fd_step(const TimeChange& tc, double base_scale) {
    const double um = tc.u_min();
    double h = base_scale * std::max(1.0, std::isinf(um) ? 1.0 : -um);
    if (std::isfinite(um)) {
        h = std::min(h, -um / 8.0);  // keep the Richardson stencil inside the domain
    }
    return h;
}

}  // namespace

double mean_rate(const TimeChange& tc, double t) {
    if (!(t > 0.0)) {
        throw std::invalid_argument("mean_rate: t must be positive");
    }
    const double h = fd_step(tc, 1e-5);
    const auto diff = [&](double hh) {
        return (tc.laplace_exponent(hh, t) - tc.laplace_exponent(-hh, t)) / (2.0 * hh);
    };
    const double coarse = diff(h);
    const double fine = diff(0.5 * h);
    return (4.0 * fine - coarse) / 3.0 / t;
}

double cumulant(const TimeChange& tc, double t, int order) {
    if (!(t > 0.0)) {
        throw std::invalid_argument("cumulant: t must be positive");
    }
    if (order < 1 || order > 4) {
        throw std::invalid_argument("cumulant: order must be in 1..4");
    }
    // Step sizes balance truncation against roundoff per derivative order.
    static constexpr double kBase[5] = {0.0, 1e-5, 1.2e-4, 8e-4, 2.5e-3};
    const double h = fd_step(tc, kBase[order]);
    const auto psi = [&](double u) { return tc.laplace_exponent(u, t); };
    const auto stencil = [&](double hh) {
        switch (order) {
            case 1:
                return (psi(hh) - psi(-hh)) / (2.0 * hh);
            case 2:
                return (psi(hh) - 2.0 * psi(0.0) + psi(-hh)) / (hh * hh);
            case 3:
                return (psi(2.0 * hh) - 2.0 * psi(hh) + 2.0 * psi(-hh) - psi(-2.0 * hh)) /
                       (2.0 * hh * hh * hh);
            default:
                return (psi(2.0 * hh) - 4.0 * psi(hh) + 6.0 * psi(0.0) - 4.0 * psi(-hh) +
                        psi(-2.0 * hh)) /
                       (hh * hh * hh * hh);
        }
    };
    const double coarse = stencil(h);
    const double fine = stencil(0.5 * h);
    const double deriv = (4.0 * fine - coarse) / 3.0;
    return (order % 2 == 0) ? -deriv : deriv;
}

Complex tcbm_char_fn(const TimeChange& tc, const BrownianParams& p, double u, double t) {
    p.validate();
    const double s2 = p.sigma * p.sigma;
    const Complex arg(0.5 * s2 * u * u, -s2 * p.beta * u);
    return std::exp(-tc.laplace_exponent(arg, t));
}

}  // namespace tcbm
