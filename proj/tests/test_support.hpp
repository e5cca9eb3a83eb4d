#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "tcbm/brownian.hpp"
#include "tcbm/mc.hpp"
#include "tcbm/time_change.hpp"

namespace tcbm_test {

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

// Brownian survival by path simulation with Brownian-bridge crossing weights:
// the product of per-step bridge non-crossing probabilities is an unbiased
// estimator of P[t* > t] free of discretization bias. With a level the
// terminal indicator X_t >= level is added.
inline MeanSe bridge_survival_mc(const tcbm::BrownianParams& p, double t, double level,
                                 bool use_level, std::int64_t n_paths, int n_steps,
                                 std::uint64_t seed) {
    const double dt = t / n_steps;
    const double drift = p.drift_rate() * dt;
    const double vol = p.sigma * std::sqrt(dt);
    const double bridge_scale = 2.0 / (p.sigma * p.sigma * dt);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::int64_t path = 0; path < n_paths; ++path) {
        tcbm::PathRng rng(seed, path);
        double level_prev = p.x;
        double weight = 1.0;
        for (int i = 0; i < n_steps && weight > 0.0; ++i) {
            const double level_next = level_prev + drift + vol * rng.normal();
            if (level_next <= 0.0) {
                weight = 0.0;
            } else {
                weight *= -std::expm1(-bridge_scale * level_prev * level_next);
            }
            level_prev = level_next;
        }
        if (use_level && level_prev < level) {
            weight = 0.0;
        }
        sum += weight;
        sum_sq += weight * weight;
    }
    const double mean = sum / n_paths;
    const double var = std::max(sum_sq / n_paths - mean * mean, 0.0);
    return {mean, std::sqrt(var / n_paths)};
}

inline double ks_distance_to_cdf(std::vector<double> samples,
                                 const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        worst = std::max(worst, std::abs(f - (i + 1) / n));
        worst = std::max(worst, std::abs(f - i / n));
    }
    return worst;
}

// Kolmogorov-Smirnov distance between two empirical CDFs evaluated on a grid.
inline double ks_on_grid(const std::vector<double>& grid, const std::vector<double>& a,
                         const std::vector<double>& b) {
    double worst = 0.0;
    for (const double g : grid) {
        const auto frac = [&](const std::vector<double>& v) {
            std::int64_t count = 0;
            for (const double s : v) {
                count += (s <= g);
            }
            return static_cast<double>(count) / static_cast<double>(v.size());
        };
        worst = std::max(worst, std::abs(frac(a) - frac(b)));
    }
    return worst;
}

}  // namespace tcbm_test
