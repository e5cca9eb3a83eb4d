#pragma once

#include <memory>

#include "tcbm/brownian.hpp"
#include "tcbm/first_passage.hpp"
#include "tcbm/quadrature.hpp"
#include "tcbm/time_change.hpp"

namespace tcbm {

/// Full single-firm credit specification. The log-leverage ratio follows a
/// time-changed Brownian motion whose clock is the convex combination
/// alpha1 * int lambda1 + alpha2 * int lambda2 + alpha3 * G3, default is the
/// first time the clock overshoots the Brownian passage level, the short
/// rate is r = r_base + m1 lambda1 + m2 lambda2, and defaulted bonds pay a
/// constant fraction of an otherwise identical treasury.
struct FirmCredit {
    BrownianParams brownian;  // beta < 0
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double alpha3 = 1.0;
    IntegratedCir tc1{1.0, 1.0, 1.0, 1.0};
    IntegratedOuJump tc2{1.0, 1.0, 1.0, 1.0};
    std::shared_ptr<const TimeChange> tc3;  // Levy subordinator
    IntegratedCir rate_base{0.0, 1.0, 0.0, 0.0};  // r~, not normalized
    double m1 = 0.0;
    double m2 = 0.0;
    double recovery = 0.0;  // R in [0, 1)

    void validate() const;

    /// The combined clock of the log-leverage process.
    ConvexCombination combined_change() const;
};

/// P[default before t] (second-kind passage of the combined clock).
double default_probability(const FirmCredit& firm, double t, const QuadratureConfig& q = {});

/// Default-free zero coupon bond price, maturity T.
double riskfree_bond(const FirmCredit& firm, double maturity);

/// Zero-recovery defaultable zero coupon bond price.
double zero_recovery_bond(const FirmCredit& firm, double maturity,
                          const QuadratureConfig& q = {});

/// Recovery-of-treasury bond: (1 - R) * zero_recovery + R * riskfree.
double recovery_bond(const FirmCredit& firm, double maturity, const QuadratureConfig& q = {});

struct CdsLegs {
    double premium_unit = 0.0;  // V(T): value of a unit running premium
    double default_leg = 0.0;   // W(T)
};

/// Premium leg by composite Simpson over the zero-recovery bond curve
/// (n_time_steps nodes, doubled until stable); default leg
/// (1 - R) (riskfree - zero_recovery). `printed_default_leg_factor` switches
/// to the (1 - R)/R variant kept for compatibility; it diverges as R -> 0.
CdsLegs cds_legs(const FirmCredit& firm, double maturity, int n_time_steps = 64,
                 const QuadratureConfig& q = {}, bool printed_default_leg_factor = false);

/// W(T) / V(T).
double cds_spread(const FirmCredit& firm, double maturity, int n_time_steps = 64,
                  const QuadratureConfig& q = {});

/// Zero-recovery yield spread -log(zero_recovery / riskfree) / T.
double yield_spread(const FirmCredit& firm, double maturity, const QuadratureConfig& q = {});

}  // namespace tcbm
