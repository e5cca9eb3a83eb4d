#pragma once

namespace tcbm {

/// Drifting Brownian motion X_t = x + sigma W_t + beta sigma^2 t.
///
/// x is the starting level (log-leverage in credit applications), sigma the
/// volatility per unit of operational time, and beta the dimensionless drift
/// coefficient, so the drift rate is beta * sigma^2.
struct BrownianParams {
    double x = 1.0;
    double sigma = 0.3;
    double beta = -0.5;

    double drift_rate() const { return beta * sigma * sigma; }

    void validate() const;          // sigma > 0, finite fields
    void validate_passage() const;  // additionally x > 0
};

/// Standard normal CDF via the complementary error function.
double norm_cdf(double z);

/// log N(z), finite for all z (asymptotic expansion once erfc underflows).
double log_norm_cdf(double z);

/// P[t* <= t] for the passage time t* = inf{ s : X_s <= 0 }, t > 0, x > 0.
double passage_cdf(double t, const BrownianParams& p);

/// -log E[ exp(-u t*) ; t* < inf ] = x (beta + sqrt(beta^2 + 2u/sigma^2)),
/// defined for u > -beta^2 sigma^2 / 2.
double passage_laplace_exponent(double u, const BrownianParams& p);

/// P[t* > t, X_t >= level] for level >= 0.
double survival_above(double t, double level, const BrownianParams& p);

}  // namespace tcbm
