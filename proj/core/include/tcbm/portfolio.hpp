#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "tcbm/brownian.hpp"
#include "tcbm/first_passage.hpp"
#include "tcbm/quadrature.hpp"
#include "tcbm/time_change.hpp"

namespace tcbm {

/// One firm in the one-factor portfolio: its clock is
/// alpha * G_common + (1 - alpha) * H_idio with an independent Brownian core.
struct FirmFactorSpec {
    BrownianParams brownian;
    double alpha = 0.5;
    std::shared_ptr<const TimeChange> idio;
    double loss_weight = 1.0;

    void validate() const;
};

struct PortfolioSpec {
    std::shared_ptr<const TimeChange> common;
    std::vector<FirmFactorSpec> firms;
    int n_y = 2048;       // mixing grid nodes
    double k_std = 12.0;  // grid reach in common-clock standard deviations

    void validate() const;
};

/// Survival probability of one firm conditional on the realized common clock
/// G_t = y; the idiosyncratic part is integrated to the calendar horizon t.
double conditional_survival(const FirmFactorSpec& firm, double y, double t,
                            const QuadratureConfig& q = {});

/// Density of the common clock G_t on a uniform midpoint grid by Fourier
/// inversion of exp(-psi(-i theta, t)). Deterministic drift shifts the grid
/// origin; a not-yet-jumped compound Poisson component keeps a point mass at
/// the origin. Grid weights are renormalized to total mass 1; raw_mass keeps
/// the pre-normalization figure, which must land within 1e-3 of 1 or the
/// inversion is declared failed.
DensityTable mixing_density(const TimeChange& common, double t, int n_y = 2048,
                            double k_std = 12.0, const QuadratureConfig& q = {});

/// Probability that exactly the masked firms are in default at t.
double joint_default_probability(const PortfolioSpec& portfolio, std::uint32_t defaulted_mask,
                                 double t, const QuadratureConfig& q = {});

/// All 2^M joint state probabilities (mask-indexed), one conditional table.
std::vector<double> joint_default_distribution(const PortfolioSpec& portfolio, double t,
                                               const QuadratureConfig& q = {});

struct LossDistribution {
    double step = 0.0;             // lattice spacing
    std::vector<double> level;     // loss levels, level[i] = i * step
    std::vector<double> probability;

    double mean() const;
};

/// Portfolio loss distribution at horizon t: conditionally independent
/// defaults convolved firm by firm on a common loss lattice, then mixed over
/// the common-clock density.
LossDistribution loss_distribution(const PortfolioSpec& portfolio, double t,
                                   const QuadratureConfig& q = {});

}  // namespace tcbm
