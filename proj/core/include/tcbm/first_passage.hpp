#pragma once

#include <functional>
#include <vector>

#include "tcbm/brownian.hpp"
#include "tcbm/quadrature.hpp"
#include "tcbm/time_change.hpp"

namespace tcbm {

/// Density of G_t tabulated on a uniform grid of cell midpoints, with an
/// optional point mass for deterministic drift components that have not been
/// smeared by any jump yet. Weights are cell masses, so total_mass() should
/// be 1 for a proper table.
struct DensityTable {
    std::vector<double> y;  // cell midpoints
    std::vector<double> w;  // cell masses
    double step = 0.0;
    double atom_y = 0.0;
    double atom_mass = 0.0;
    double raw_mass = 0.0;  // mass before renormalization (diagnostic)

    double total_mass() const;
    double mean() const;

    /// Tabulate a closed-form density rho on [lo, hi] with n midpoint cells.
    static DensityTable from_density(const std::function<double(double)>& rho, double lo,
                                     double hi, int n);
};

/// CDF of the first passage time of the second kind,
/// P[t2 <= t] with t2 = inf{ t : G_t >= t* }.
double second_passage_cdf(double t, const BrownianParams& p, const TimeChange& tc,
                          const QuadratureConfig& q = {});

/// Same CDF through the conditioning route: integral of the Brownian passage
/// CDF against a supplied density table of G_t (must integrate to 1 within
/// 1e-6).
double second_passage_cdf_from_density(const BrownianParams& p, const DensityTable& gt);

/// State-price style density of the surviving firm: E_x[1_{t < t2} delta(L_t - l)].
/// Zero for l <= 0.
double surviving_density(double t, double l, const BrownianParams& p, const TimeChange& tc,
                         const QuadratureConfig& q = {});

/// Density restricted to the defaulted event: E_x[1_{t >= t2} delta(L_t - l)].
double defaulted_density(double t, double l, const BrownianParams& p, const TimeChange& tc,
                         const QuadratureConfig& q = {});

/// Unconstrained density of L_t (inverse transform of the characteristic
/// function); the sum of the two restricted densities above.
double tcbm_density(double t, double l, const BrownianParams& p, const TimeChange& tc,
                    const QuadratureConfig& q = {});

/// E_x[1_{t < t2} exp((-beta + i k) L_t)] for k in the upper half plane.
Complex survival_char_fn(Complex k, double t, const BrownianParams& p, const TimeChange& tc,
                         const QuadratureConfig& q = {});

namespace detail {

/// (2/pi) Int_0^inf z sin(z x)/(z^2 + beta^2) exp(-exponent(sigma^2 (z^2 + beta^2)/2)) dz.
/// The shared kernel of every passage/pricing transform here.
double sine_kernel_transform(const BrownianParams& p,
                             const std::function<double(double)>& exponent,
                             const QuadratureConfig& q);

/// Clips v to [lo, hi] when it is within `slack` of the range, errors otherwise.
double clip_to_range(double v, double lo, double hi, double slack, const char* what);

}  // namespace detail

}  // namespace tcbm
