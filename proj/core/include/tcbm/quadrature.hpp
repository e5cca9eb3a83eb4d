#pragma once

#include <complex>
#include <functional>

#include "tcbm/errors.hpp"

namespace tcbm {

struct QuadratureConfig {
    double abs_tol = 1e-9;        // absolute tolerance of a tail sum
    int max_panels = 4000;        // cap on half-period panels
    int acceleration_order = 10;  // averaging levels for the alternating tail

    void validate() const;
    bool operator==(const QuadratureConfig&) const = default;
};

/// Adaptive Gauss-Legendre integration on [a, b].
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth = 24);
std::complex<double> integrate_adaptive(const std::function<std::complex<double>(double)>& f,
                                        double a, double b, double abs_tol, int max_depth = 24);

/// Integral of f over [0, inf) for an integrand that eventually oscillates
/// with sign flips every `width`. The axis is cut into panels [0, first],
/// [first, first + width], ... and the partial sums are accelerated by
/// iterated averaging, which turns the conditionally convergent tails that
/// slowly decaying Laplace exponents produce into rapidly convergent ones.
/// Throws QuadratureError when the tail estimate fails to stabilize within
/// max_panels.
double oscillating_integral(const std::function<double(double)>& f, double first, double width,
                            const QuadratureConfig& q);
std::complex<double> oscillating_integral_complex(
    const std::function<std::complex<double>(double)>& f, double first, double width,
    const QuadratureConfig& q);

}  // namespace tcbm
