#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "tcbm/brownian.hpp"

namespace tcbm {

using Complex = std::complex<double>;

/// A random clock G with Laplace exponent psi(u, t) = -log E[exp(-u G_t)].
///
/// Implementations are immutable after construction and safe to evaluate
/// concurrently. psi uses principal branches throughout; it is analytic in u
/// on the half plane Re(u) > u_min() and satisfies psi(0, t) = 0 and
/// psi(u, 0) = 0.
class TimeChange {
public:
    virtual ~TimeChange() = default;

    virtual double laplace_exponent(double u, double t) const = 0;
    virtual Complex laplace_exponent(Complex u, double t) const = 0;

    /// Lower edge of the analyticity domain (branch point), always <= 0.
    virtual double u_min() const = 0;

    /// G_t when the clock is deterministic, nullopt otherwise.
    virtual std::optional<double> deterministic_value(double t) const;

    /// Almost-sure lower bound of G_t (deterministic drift component).
    virtual double deterministic_floor(double t) const;

    /// P[G_t == deterministic_floor(t)]; nonzero only for finite-activity
    /// clocks (compound Poisson jumps that may not have fired yet).
    virtual double atom_mass(double t) const;

    virtual std::unique_ptr<TimeChange> clone() const = 0;

protected:
    void require_domain(double re_u, double t) const;
};

/// Drift b plus compound Poisson jumps with Exp(a) marks arriving at rate c:
/// psi(u, t) = t [ b u + u c / (a + u) ].  Normalization: b + c/a = 1.
class ExponentialSubordinator final : public TimeChange {
public:
    ExponentialSubordinator(double a, double b, double c, bool require_normalized = false);

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }

    double laplace_exponent(double u, double t) const override;
    Complex laplace_exponent(Complex u, double t) const override;
    double u_min() const override;
    std::optional<double> deterministic_value(double t) const override;
    double deterministic_floor(double t) const override { return b_ * t; }
    double atom_mass(double t) const override;
    std::unique_ptr<TimeChange> clone() const override;

private:
    double a_, b_, c_;
};

/// Gamma process with drift: psi(u, t) = t [ b u + c log(1 + u/a) ].
/// Normalization: b + c/a = 1.
class GammaSubordinator final : public TimeChange {
public:
    GammaSubordinator(double a, double b, double c, bool require_normalized = false);

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }

    double laplace_exponent(double u, double t) const override;
    Complex laplace_exponent(Complex u, double t) const override;
    double u_min() const override;
    double deterministic_floor(double t) const override { return b_ * t; }
    std::unique_ptr<TimeChange> clone() const override;

private:
    double a_, b_, c_;
};

/// Inverse Gaussian clock (hitting times of a drifting Brownian motion):
/// psi(u, t) = gamma_tilde t (sqrt(beta_tilde^2 + 2u) - beta_tilde).
/// Normalization: gamma_tilde / beta_tilde = 1.
class InverseGaussianSubordinator final : public TimeChange {
public:
    InverseGaussianSubordinator(double beta_tilde, double gamma_tilde,
                                bool require_normalized = false);

    double beta_tilde() const { return beta_tilde_; }
    double gamma_tilde() const { return gamma_tilde_; }

    double laplace_exponent(double u, double t) const override;
    Complex laplace_exponent(Complex u, double t) const override;
    double u_min() const override;
    std::unique_ptr<TimeChange> clone() const override;

private:
    double beta_tilde_, gamma_tilde_;
};

/// Integrated square-root diffusion intensity,
/// d lambda = (a - b lambda) dt + sqrt(2 c lambda) dW, G_t = int_0^t lambda.
/// psi(u, t; lambda0) = lambda0 * loading(u, t) + offset(u, t).
/// Normalization (stationary unit rate): a/b = 1 with lambda0 = a/b.
/// c = 0 degenerates to the deterministic mean-reverting flow, which is how
/// constant or deterministic short rates are expressed.
class IntegratedCir final : public TimeChange {
public:
    IntegratedCir(double a, double b, double c, double lambda0, bool require_normalized = false);

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double lambda0() const { return lambda0_; }

    IntegratedCir with_initial(double lambda0) const;

    double loading(double u, double t) const;   // multiplies lambda0
    Complex loading(Complex u, double t) const;
    double offset(double u, double t) const;
    Complex offset(Complex u, double t) const;

    double laplace_exponent(double u, double t) const override;
    Complex laplace_exponent(Complex u, double t) const override;
    double u_min() const override;
    std::optional<double> deterministic_value(double t) const override;
    std::unique_ptr<TimeChange> clone() const override;

private:
    double a_, b_, c_, lambda0_;
};

/// Integrated mean-reverting jump intensity, d lambda = -b lambda dt + dJ,
/// where J is the compound Poisson subordinator with Exp(a) marks at rate c.
/// psi(u, t; lambda0) = lambda0 * loading(u, t) + offset(u, t).
/// Normalization (stationary unit rate): c/(a b) = 1 with lambda0 = c/(a b).
class IntegratedOuJump final : public TimeChange {
public:
    IntegratedOuJump(double a, double b, double c, double lambda0,
                     bool require_normalized = false);

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double lambda0() const { return lambda0_; }

    IntegratedOuJump with_initial(double lambda0) const;

    double loading(double u, double t) const;
    Complex loading(Complex u, double t) const;
    double offset(double u, double t) const;
    Complex offset(Complex u, double t) const;

    double laplace_exponent(double u, double t) const override;
    Complex laplace_exponent(Complex u, double t) const override;
    double u_min() const override;
    std::optional<double> deterministic_value(double t) const override;
    double deterministic_floor(double t) const override;
    double atom_mass(double t) const override;
    std::unique_ptr<TimeChange> clone() const override;

private:
    double decay_integral(double t) const;  // (1 - e^{-b t}) / b
    double a_, b_, c_, lambda0_;
};

/// G = sum_i alpha_i G_i for independent parts with convex weights:
/// psi(u, t) = sum_i psi_i(alpha_i u, t).
class ConvexCombination final : public TimeChange {
public:
    using Part = std::pair<double, std::shared_ptr<const TimeChange>>;

    explicit ConvexCombination(std::vector<Part> parts);

    const std::vector<Part>& parts() const { return parts_; }

    double laplace_exponent(double u, double t) const override;
    Complex laplace_exponent(Complex u, double t) const override;
    double u_min() const override;
    std::optional<double> deterministic_value(double t) const override;
    double deterministic_floor(double t) const override;
    double atom_mass(double t) const override;
    std::unique_ptr<TimeChange> clone() const override;

private:
    std::vector<Part> parts_;
};

/// E[G_t] / t from the derivative of psi at u = 0 (central differences,
/// Richardson extrapolated once). Tends to 1 for a normalized clock.
double mean_rate(const TimeChange& tc, double t);

/// k-th cumulant of G_t, k in 1..4, by finite differencing psi at u = 0 with
/// the convention kappa_k = (-1)^k d^k(-psi)/du^k |_0.
double cumulant(const TimeChange& tc, double t, int order);

/// E[exp(i u (L_t - L_0))] for the time-changed Brownian motion L_t = X_{G_t}:
/// exp(-psi(sigma^2 (u^2/2 - i beta u), t)).
Complex tcbm_char_fn(const TimeChange& tc, const BrownianParams& p, double u, double t);

}  // namespace tcbm
