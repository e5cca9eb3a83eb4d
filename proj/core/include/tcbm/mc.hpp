#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "tcbm/brownian.hpp"
#include "tcbm/credit.hpp"
#include "tcbm/time_change.hpp"

namespace tcbm {

struct SimConfig {
    std::uint64_t seed = 1;
    std::int64_t n_paths = 100000;
    double dt = 1.0 / 250.0;  // step for continuous intensities
    bool antithetic = false;

    void validate() const;
    bool operator==(const SimConfig&) const = default;
};

/// Deterministic per-path random stream. Each path owns an independently
/// seeded generator, so results do not depend on scheduling and identical
/// configs reproduce bit-identical outputs. The antithetic flag flips
/// uniforms to 1-u and negates normals.
class PathRng {
public:
    PathRng(std::uint64_t seed, std::int64_t path_index, bool antithetic = false);

    double uniform();  // (0, 1)
    double normal();
    double exponential(double rate);
    double gamma_draw(double shape, double scale);
    std::int64_t poisson(double mean);
    double inverse_gaussian(double mu, double lambda);
    double noncentral_chi_square(double dof, double noncentrality);

private:
    double raw_uniform();
    std::mt19937_64 eng_;
    bool anti_ = false;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

/// Exact-marginal increment of a Levy clock over dt; throws for time changes
/// that are not Levy subordinators.
double sample_subordinator_increment(const TimeChange& tc, double dt, PathRng& rng);
double sample_subordinator_increment(const ExponentialSubordinator& s, double dt, PathRng& rng);
double sample_subordinator_increment(const GammaSubordinator& s, double dt, PathRng& rng);
double sample_subordinator_increment(const InverseGaussianSubordinator& s, double dt,
                                     PathRng& rng);

/// Intensity path on a uniform grid with its running integral. CIR steps use
/// the exact noncentral chi-square transition; the jump OU intensity decays
/// exactly between Poisson arrival times, and its integral is exact.
struct IntensityPath {
    std::vector<double> time;
    std::vector<double> level;
    std::vector<double> integral;  // int_0^{time[i]} level ds
};

IntensityPath sample_integrated_cir(const IntegratedCir& m, double horizon, double dt,
                                    PathRng& rng);
IntensityPath sample_integrated_ou_jump(const IntegratedOuJump& m, double horizon, double dt,
                                        PathRng& rng);

/// One exact CIR transition over dt.
double cir_exact_step(const IntegratedCir& m, double level, double dt, PathRng& rng);

/// Draws t* = inf{ s : X_s <= 0 } by inverting the closed-form passage CDF
/// (bisection to 1e-12 relative); +inf with probability 1 - e^{-2 beta x}
/// when beta > 0.
double sample_passage_time(const BrownianParams& p, PathRng& rng);

/// Samples the clock G at sorted times, exactly at those times for Levy
/// parts; integrated intensities run on a merged dt grid.
class TimeChangeSampler {
public:
    TimeChangeSampler(const TimeChange& tc, double dt);

    std::vector<double> sample(std::span<const double> times, PathRng& rng) const;
    double sample_at(double t, PathRng& rng) const;

private:
    struct Component;
    std::vector<Component> components_;
    double dt_;
    void flatten(const TimeChange& tc, double weight);
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// E[e^{-u G_t}] by simulation.
McEstimate mc_laplace_transform(const TimeChange& tc, double u, double t, const SimConfig& sim);

/// E[1_{survival} e^{i u (L_t - L_0)}] has no direct role; the characteristic
/// function of the unconstrained increment does:
McEstimate mc_char_fn_real(const TimeChange& tc, const BrownianParams& p, double u, double t,
                           const SimConfig& sim);
McEstimate mc_char_fn_imag(const TimeChange& tc, const BrownianParams& p, double u, double t,
                           const SimConfig& sim);

struct McCdf {
    std::vector<double> t;
    std::vector<double> estimate;
    std::vector<double> std_error;
};

/// Empirical CDF of the second-kind passage time on a time grid: per path a
/// passage level t* is drawn exactly and the clock is sampled on the grid;
/// the reported time is the first grid point with G >= t*.
McCdf mc_second_passage_cdf(const TimeChange& tc, const BrownianParams& p,
                            std::vector<double> t_grid, const SimConfig& sim);

/// Paired samples of the discretized direct passage time t1 (the path of
/// X_{G_t} itself crossing zero) and the grid passage time t2 of the clock
/// over the same path's Brownian crossing level. Both are censored at the
/// horizon (+inf). By construction t2 <= t1 on every path; `violations`
/// counts any breach.
struct PassagePairs {
    std::vector<double> grid;
    std::vector<double> t1;
    std::vector<double> t2;
    std::int64_t violations = 0;
};

PassagePairs mc_passage_ordering(const TimeChange& tc, const BrownianParams& p, double horizon,
                                 const SimConfig& sim);

enum class PayoffKind { ZeroRecoveryBond, RecoveryBond, CdsDefaultLeg };

/// Joint simulation of the short rate, both affine intensities, the Levy
/// clock and the Brownian passage level; discounting by trapezoidal
/// integration of the rate path, with affine repricing of the reference
/// treasury at the default date for recovery payoffs.
McEstimate mc_price(const FirmCredit& firm, PayoffKind payoff, double maturity,
                    const SimConfig& sim);

}  // namespace tcbm
