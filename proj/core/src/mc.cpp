#include "tcbm/mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace tcbm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

void SimConfig::validate() const {
    if (n_paths < 1) {
        throw std::invalid_argument("SimConfig: n_paths must be >= 1");
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("SimConfig: dt must be positive");
    }
    if (antithetic && n_paths % 2 != 0) {
        throw std::invalid_argument("SimConfig: antithetic sampling needs an even n_paths");
    }
}

// ---------------------------------------------------------------------------
// PathRng

PathRng::PathRng(std::uint64_t seed, std::int64_t path_index, bool antithetic)
    : anti_(antithetic) {
    std::uint64_t state = seed ^ (0xD1B54A32D192ED03ull * static_cast<std::uint64_t>(path_index + 1));
    const std::uint64_t w0 = splitmix64(state);
    const std::uint64_t w1 = splitmix64(state);
    std::seed_seq seq{static_cast<std::uint32_t>(w0), static_cast<std::uint32_t>(w0 >> 32),
                      static_cast<std::uint32_t>(w1), static_cast<std::uint32_t>(w1 >> 32)};
    eng_.seed(seq);
}

double PathRng::raw_uniform() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
}

double PathRng::uniform() {
    const double u = raw_uniform();
    return anti_ ? 1.0 - u : u;
}

double PathRng::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return anti_ ? -cached_normal_ : cached_normal_;
    }
    const double u1 = raw_uniform();
    const double u2 = raw_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double z = r * std::cos(kTwoPi * u2);
    cached_normal_ = r * std::sin(kTwoPi * u2);
    has_cached_ = true;
    return anti_ ? -z : z;
}

double PathRng::exponential(double rate) {
    return -std::log(uniform()) / rate;
}

double PathRng::gamma_draw(double shape, double scale) {
    if (shape == 0.0) {
        return 0.0;
    }
    if (shape < 0.0 || scale < 0.0) {
        throw std::invalid_argument("PathRng::gamma_draw: negative shape or scale");
    }
    double boost = 1.0;
    if (shape < 1.0) {
        boost = std::pow(uniform(), 1.0 / shape);
        shape += 1.0;
    }
    // Marsaglia-Tsang squeeze
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double z;
        double v;
        do {
            z = normal();
            v = 1.0 + c * z;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * z * z * z * z) {
            return boost * d * v * scale;
        }
        if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) {
            return boost * d * v * scale;
        }
    }
}

std::int64_t PathRng::poisson(double mean) {
    if (mean < 0.0 || !std::isfinite(mean)) {
        throw std::invalid_argument("PathRng::poisson: mean must be finite and >= 0");
    }
    if (mean == 0.0) {
        return 0;
    }
    if (mean > 30.0) {
        // split to keep the product method's exponent in range
        const double half = 0.5 * mean;
        return poisson(half) + poisson(mean - half);
    }
    const double limit = std::exp(-mean);
    std::int64_t k = 0;
    double prod = 1.0;
    do {
        ++k;
        prod *= uniform();
    } while (prod > limit);
    return k - 1;
}

double PathRng::inverse_gaussian(double mu, double lambda) {
    const double z = normal();
    const double y = z * z;
    const double x = mu + 0.5 * mu * mu * y / lambda -
                     0.5 * (mu / lambda) * std::sqrt(4.0 * mu * lambda * y + mu * mu * y * y);
    const double u = uniform();
    if (u <= mu / (mu + x)) {
        return x;
    }
    return mu * mu / x;
}

double PathRng::noncentral_chi_square(double dof, double noncentrality) {
    if (dof > 1.0) {
        const double z = normal() + std::sqrt(noncentrality);
        return gamma_draw(0.5 * (dof - 1.0), 2.0) + z * z;
    }
    const std::int64_t k = poisson(0.5 * noncentrality);
    return gamma_draw(0.5 * dof + static_cast<double>(k), 2.0);
}

// ---------------------------------------------------------------------------
// Subordinator increments

double sample_subordinator_increment(const ExponentialSubordinator& s, double dt, PathRng& rng) {
    if (dt == 0.0) {
        return 0.0;
    }
    double inc = s.b() * dt;
    const std::int64_t jumps = rng.poisson(s.c() * dt);
    for (std::int64_t j = 0; j < jumps; ++j) {
        inc += rng.exponential(s.a());
    }
    return inc;
}

double sample_subordinator_increment(const GammaSubordinator& s, double dt, PathRng& rng) {
    if (dt == 0.0) {
        return 0.0;
    }
    return s.b() * dt + rng.gamma_draw(s.c() * dt, 1.0 / s.a());
}

double sample_subordinator_increment(const InverseGaussianSubordinator& s, double dt,
                                     PathRng& rng) {
    if (dt == 0.0) {
        return 0.0;
    }
    const double mu = s.gamma_tilde() * dt / s.beta_tilde();
    const double lambda = s.gamma_tilde() * dt * s.gamma_tilde() * dt;
    return rng.inverse_gaussian(mu, lambda);
}

double sample_subordinator_increment(const TimeChange& tc, double dt, PathRng& rng) {
    if (const auto* e = dynamic_cast<const ExponentialSubordinator*>(&tc)) {
        return sample_subordinator_increment(*e, dt, rng);
    }
    if (const auto* g = dynamic_cast<const GammaSubordinator*>(&tc)) {
        return sample_subordinator_increment(*g, dt, rng);
    }
    if (const auto* ig = dynamic_cast<const InverseGaussianSubordinator*>(&tc)) {
        return sample_subordinator_increment(*ig, dt, rng);
    }
    throw std::invalid_argument("sample_subordinator_increment: unknown subordinator family");
}

// ---------------------------------------------------------------------------
// Intensity paths

double cir_exact_step(const IntegratedCir& m, double level, double dt, PathRng& rng) {
    if (m.c() == 0.0) {
        const double mean = m.a() / m.b();
        return mean + (level - mean) * std::exp(-m.b() * dt);
    }
    const double decay = std::exp(-m.b() * dt);
    const double cstar = m.b() / (m.c() * (-std::expm1(-m.b() * dt)));
    const double dof = 2.0 * m.a() / m.c();
    const double noncentrality = 2.0 * cstar * decay * level;
    return rng.noncentral_chi_square(dof, noncentrality) / (2.0 * cstar);
}

namespace {

std::vector<double> uniform_grid(double horizon, double dt) {
    const int n = std::max(1, static_cast<int>(std::ceil(horizon / dt - 1e-12)));
    std::vector<double> grid(n + 1);
    for (int i = 0; i <= n; ++i) {
        grid[i] = horizon * static_cast<double>(i) / n;
    }
    return grid;
}

}  // namespace

IntensityPath sample_integrated_cir(const IntegratedCir& m, double horizon, double dt,
                                    PathRng& rng) {
    IntensityPath path;
    path.time = uniform_grid(horizon, dt);
    const std::size_t n = path.time.size();
    path.level.resize(n);
    path.integral.resize(n);
    path.level[0] = m.lambda0();
    path.integral[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double h = path.time[i] - path.time[i - 1];
        path.level[i] = cir_exact_step(m, path.level[i - 1], h, rng);
        if (m.c() == 0.0) {
            const double mean = m.a() / m.b();
            path.integral[i] = path.integral[i - 1] + mean * h +
                               (path.level[i - 1] - mean) * (-std::expm1(-m.b() * h)) / m.b();
        } else {
            path.integral[i] =
                path.integral[i - 1] + 0.5 * h * (path.level[i - 1] + path.level[i]);
        }
    }
    return path;
}

IntensityPath sample_integrated_ou_jump(const IntegratedOuJump& m, double horizon, double dt,
                                        PathRng& rng) {
    IntensityPath path;
    path.time = uniform_grid(horizon, dt);
    const std::size_t n = path.time.size();
    path.level.resize(n);
    path.integral.resize(n);
    path.level[0] = m.lambda0();
    path.integral[0] = 0.0;
    const double b = m.b();
    for (std::size_t i = 1; i < n; ++i) {
        const double h = path.time[i] - path.time[i - 1];
        double level = path.level[i - 1] * std::exp(-b * h);
        double integral = path.level[i - 1] * (-std::expm1(-b * h)) / b;
        const std::int64_t jumps = (m.c() > 0.0) ? rng.poisson(m.c() * h) : 0;
        for (std::int64_t j = 0; j < jumps; ++j) {
            const double tau = rng.uniform() * h;  // arrival within the step
            const double mark = rng.exponential(m.a());
            const double rest = h - tau;
            level += mark * std::exp(-b * rest);
            integral += mark * (-std::expm1(-b * rest)) / b;
        }
        path.level[i] = level;
        path.integral[i] = path.integral[i - 1] + integral;
    }
    return path;
}

// ---------------------------------------------------------------------------
// Passage level

double sample_passage_time(const BrownianParams& p, PathRng& rng) {
    p.validate_passage();
    const double u = rng.uniform();
    if (p.beta > 0.0) {
        const double p_finite = std::exp(-2.0 * p.beta * p.x);
        if (u >= p_finite) {
            return kInf;
        }
    }
    double hi = 1.0;
    int guard = 0;
    while (passage_cdf(hi, p) < u) {
        hi *= 2.0;
        if (++guard > 400) {
            return kInf;  // beyond any representable horizon
        }
    }
    double lo = 0.0;
    for (int iter = 0; iter < 300 && (hi - lo) > 1e-12 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (passage_cdf(mid, p) < u) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// TimeChangeSampler

struct TimeChangeSampler::Component {
    enum class Kind { Deterministic, Exponential, Gamma, InverseGaussian, Cir, OuJump };
    Kind kind;
    double weight;
    double drift = 0.0;  // Deterministic only
    std::shared_ptr<const TimeChange> model;
};

TimeChangeSampler::TimeChangeSampler(const TimeChange& tc, double dt) : dt_(dt) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("TimeChangeSampler: dt must be positive");
    }
    flatten(tc, 1.0);
}

void TimeChangeSampler::flatten(const TimeChange& tc, double weight) {
    if (weight == 0.0) {
        return;
    }
    using Kind = Component::Kind;
    if (const auto* combo = dynamic_cast<const ConvexCombination*>(&tc)) {
        for (const auto& [w, part] : combo->parts()) {
            flatten(*part, weight * w);
        }
        return;
    }
    Component comp;
    comp.weight = weight;
    if (const auto* e = dynamic_cast<const ExponentialSubordinator*>(&tc)) {
        if (e->c() == 0.0) {
            comp.kind = Kind::Deterministic;
            comp.drift = e->b();
        } else {
            comp.kind = Kind::Exponential;
            comp.model = std::shared_ptr<const TimeChange>(e->clone().release());
        }
    } else if (dynamic_cast<const GammaSubordinator*>(&tc) != nullptr) {
        comp.kind = Kind::Gamma;
        comp.model = std::shared_ptr<const TimeChange>(tc.clone().release());
    } else if (dynamic_cast<const InverseGaussianSubordinator*>(&tc) != nullptr) {
        comp.kind = Kind::InverseGaussian;
        comp.model = std::shared_ptr<const TimeChange>(tc.clone().release());
    } else if (dynamic_cast<const IntegratedCir*>(&tc) != nullptr) {
        comp.kind = Kind::Cir;
        comp.model = std::shared_ptr<const TimeChange>(tc.clone().release());
    } else if (dynamic_cast<const IntegratedOuJump*>(&tc) != nullptr) {
        comp.kind = Kind::OuJump;
        comp.model = std::shared_ptr<const TimeChange>(tc.clone().release());
    } else {
        throw std::invalid_argument("TimeChangeSampler: unsupported time-change family");
    }
    components_.push_back(std::move(comp));
}

std::vector<double> TimeChangeSampler::sample(std::span<const double> times,
                                              PathRng& rng) const {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0.0) || (i > 0 && times[i] < times[i - 1])) {
            throw std::invalid_argument("TimeChangeSampler: times must be sorted and >= 0");
        }
    }
    std::vector<double> out(times.size(), 0.0);
    if (times.empty()) {
        return out;
    }
    const double horizon = times.back();
    using Kind = Component::Kind;
    for (const auto& comp : components_) {
        switch (comp.kind) {
            case Kind::Deterministic: {
                for (std::size_t i = 0; i < times.size(); ++i) {
                    out[i] += comp.weight * comp.drift * times[i];
                }
                break;
            }
            case Kind::Exponential:
            case Kind::Gamma:
            case Kind::InverseGaussian: {
                double level = 0.0;
                double prev = 0.0;
                for (std::size_t i = 0; i < times.size(); ++i) {
                    level += sample_subordinator_increment(*comp.model, times[i] - prev, rng);
                    prev = times[i];
                    out[i] += comp.weight * level;
                }
                break;
            }
            case Kind::Cir:
            case Kind::OuJump: {
                if (horizon == 0.0) {
                    break;
                }
                IntensityPath path;
                if (comp.kind == Kind::Cir) {
                    path = sample_integrated_cir(
                        *static_cast<const IntegratedCir*>(comp.model.get()), horizon, dt_, rng);
                } else {
                    path = sample_integrated_ou_jump(
                        *static_cast<const IntegratedOuJump*>(comp.model.get()), horizon, dt_,
                        rng);
                }
                // integral is piecewise smooth; interpolate linearly between
                // grid nodes for requested times
                std::size_t k = 0;
                for (std::size_t i = 0; i < times.size(); ++i) {
                    while (k + 1 < path.time.size() && path.time[k + 1] < times[i]) {
                        ++k;
                    }
                    double value;
                    if (k + 1 >= path.time.size()) {
                        value = path.integral.back();
                    } else {
                        const double t0 = path.time[k];
                        const double t1 = path.time[k + 1];
                        const double frac = (t1 > t0) ? (times[i] - t0) / (t1 - t0) : 0.0;
                        value = path.integral[k] + frac * (path.integral[k + 1] - path.integral[k]);
                    }
                    out[i] += comp.weight * value;
                }
                break;
            }
        }
    }
    return out;
}

double TimeChangeSampler::sample_at(double t, PathRng& rng) const {
    const double times[1] = {t};
    return sample(times, rng)[0];
}

// ---------------------------------------------------------------------------
// Oracles

namespace {

struct RunningMean {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::int64_t count = 0;

    void add(double v) {
        sum += v;
        sum_sq += v * v;
        ++count;
    }
    McEstimate estimate() const {
        const double mean = sum / static_cast<double>(count);
        const double var =
            std::max(sum_sq / static_cast<double>(count) - mean * mean, 0.0);
        return {mean, std::sqrt(var / static_cast<double>(count))};
    }
};

struct PathIndexer {
    const SimConfig& sim;
    std::int64_t stream(std::int64_t path) const { return sim.antithetic ? path / 2 : path; }
    bool flipped(std::int64_t path) const { return sim.antithetic && (path % 2 == 1); }
};

}  // namespace

McEstimate mc_laplace_transform(const TimeChange& tc, double u, double t, const SimConfig& sim) {
    sim.validate();
    const TimeChangeSampler sampler(tc, sim.dt);
    const PathIndexer idx{sim};
    RunningMean acc;
    for (std::int64_t p = 0; p < sim.n_paths; ++p) {
        PathRng rng(sim.seed, idx.stream(p), idx.flipped(p));
        acc.add(std::exp(-u * sampler.sample_at(t, rng)));
    }
    return acc.estimate();
}

namespace {

McEstimate mc_char_fn_impl(const TimeChange& tc, const BrownianParams& p, double u, double t,
                           const SimConfig& sim, bool imag_part) {
    sim.validate();
    p.validate();
    const TimeChangeSampler sampler(tc, sim.dt);
    const PathIndexer idx{sim};
    RunningMean acc;
    const double s2 = p.sigma * p.sigma;
    for (std::int64_t path = 0; path < sim.n_paths; ++path) {
        PathRng rng(sim.seed, idx.stream(path), idx.flipped(path));
        const double g = sampler.sample_at(t, rng);
        const double increment = p.beta * s2 * g + p.sigma * std::sqrt(g) * rng.normal();
        acc.add(imag_part ? std::sin(u * increment) : std::cos(u * increment));
    }
    return acc.estimate();
}

}  // namespace

McEstimate mc_char_fn_real(const TimeChange& tc, const BrownianParams& p, double u, double t,
                           const SimConfig& sim) {
    return mc_char_fn_impl(tc, p, u, t, sim, false);
}

McEstimate mc_char_fn_imag(const TimeChange& tc, const BrownianParams& p, double u, double t,
                           const SimConfig& sim) {
    return mc_char_fn_impl(tc, p, u, t, sim, true);
}

McCdf mc_second_passage_cdf(const TimeChange& tc, const BrownianParams& p,
                            std::vector<double> t_grid, const SimConfig& sim) {
    sim.validate();
    p.validate_passage();
    if (t_grid.empty()) {
        throw std::invalid_argument("mc_second_passage_cdf: empty time grid");
    }
    if (!std::is_sorted(t_grid.begin(), t_grid.end())) {
        throw std::invalid_argument("mc_second_passage_cdf: time grid must be sorted");
    }
    const TimeChangeSampler sampler(tc, sim.dt);
    const PathIndexer idx{sim};
    std::vector<std::int64_t> first_hit(t_grid.size(), 0);
    for (std::int64_t path = 0; path < sim.n_paths; ++path) {
        PathRng rng(sim.seed, idx.stream(path), idx.flipped(path));
        const double t_star = sample_passage_time(p, rng);
        const std::vector<double> g = sampler.sample(t_grid, rng);
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i] >= t_star) {
                ++first_hit[i];
                break;
            }
        }
    }
    McCdf out;
    out.t = std::move(t_grid);
    out.estimate.resize(out.t.size());
    out.std_error.resize(out.t.size());
    std::int64_t cumulative = 0;
    for (std::size_t i = 0; i < out.t.size(); ++i) {
        cumulative += first_hit[i];
        const double est = static_cast<double>(cumulative) / static_cast<double>(sim.n_paths);
        out.estimate[i] = est;
        out.std_error[i] = std::sqrt(std::max(est * (1.0 - est), 0.0) /
                                     static_cast<double>(sim.n_paths));
    }
    return out;
}

PassagePairs mc_passage_ordering(const TimeChange& tc, const BrownianParams& p, double horizon,
                                 const SimConfig& sim) {
    sim.validate();
    p.validate_passage();
    if (!(horizon > 0.0)) {
        throw std::invalid_argument("mc_passage_ordering: horizon must be positive");
    }
    const TimeChangeSampler sampler(tc, sim.dt);
    const PathIndexer idx{sim};
    PassagePairs out;
    out.grid = uniform_grid(horizon, sim.dt);
    out.t1.resize(sim.n_paths);
    out.t2.resize(sim.n_paths);

    std::vector<double> clock_times;
    std::vector<double> s_nodes;
    for (std::int64_t path = 0; path < sim.n_paths; ++path) {
        PathRng rng(sim.seed, idx.stream(path), idx.flipped(path));
        const std::vector<double> g = sampler.sample(out.grid, rng);

        // Brownian time axis: the realized clock values plus a uniform
        // refinement so crossings inside clock gaps are visible.
        clock_times.assign(g.begin(), g.end());
        const double s_max = g.back();
        s_nodes.clear();
        const int refine = std::max(1, static_cast<int>(std::ceil(s_max / sim.dt - 1e-12)));
        for (int i = 0; i <= refine; ++i) {
            s_nodes.push_back(s_max * static_cast<double>(i) / refine);
        }
        s_nodes.insert(s_nodes.end(), clock_times.begin(), clock_times.end());
        std::sort(s_nodes.begin(), s_nodes.end());
        s_nodes.erase(std::unique(s_nodes.begin(), s_nodes.end()), s_nodes.end());

        // walk X along s_nodes, record the first crossing and the values at
        // the clock times
        double level = p.x;
        double crossing_s = kInf;
        std::size_t clock_idx = 0;
        double t1 = kInf;
        for (std::size_t i = 0; i < s_nodes.size(); ++i) {
            if (i > 0) {
                const double ds = s_nodes[i] - s_nodes[i - 1];
                level += p.drift_rate() * ds + p.sigma * std::sqrt(ds) * rng.normal();
            }
            if (level <= 0.0 && crossing_s == kInf) {
                crossing_s = s_nodes[i];
            }
            while (clock_idx < g.size() && s_nodes[i] == g[clock_idx]) {
                if (level <= 0.0 && t1 == kInf) {
                    t1 = out.grid[clock_idx];
                }
                ++clock_idx;
            }
        }
        double t2 = kInf;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i] >= crossing_s) {
                t2 = out.grid[i];
                break;
            }
        }
        out.t1[path] = t1;
        out.t2[path] = t2;
        if (t2 > t1) {
            ++out.violations;
        }
    }
    return out;
}

McEstimate mc_price(const FirmCredit& firm, PayoffKind payoff, double maturity,
                    const SimConfig& sim) {
    sim.validate();
    firm.validate();
    if (!(maturity > 0.0)) {
        throw std::invalid_argument("mc_price: maturity must be positive");
    }
    const PathIndexer idx{sim};
    const double recovery = firm.recovery;
    const bool need_tc1 = firm.alpha1 > 0.0 || firm.m1 > 0.0;
    const bool need_tc2 = firm.alpha2 > 0.0 || firm.m2 > 0.0;
    const bool need_tc3 = firm.alpha3 > 0.0;
    const GammaSubordinator* levy_gamma = nullptr;
    const ExponentialSubordinator* levy_exp = nullptr;
    const InverseGaussianSubordinator* levy_ig = nullptr;
    if (need_tc3) {
        levy_gamma = dynamic_cast<const GammaSubordinator*>(firm.tc3.get());
        levy_exp = dynamic_cast<const ExponentialSubordinator*>(firm.tc3.get());
        levy_ig = dynamic_cast<const InverseGaussianSubordinator*>(firm.tc3.get());
        if (levy_gamma == nullptr && levy_exp == nullptr && levy_ig == nullptr) {
            throw std::invalid_argument("mc_price: tc3 must be a Levy subordinator");
        }
    }

    // treasury price at the default state, maturity tau away
    auto bond_at_state = [&](double tau, double rate_level, double l1, double l2) {
        double e = firm.rate_base.with_initial(rate_level).laplace_exponent(1.0, tau);
        if (firm.m1 > 0.0) {
            e += firm.tc1.with_initial(l1).laplace_exponent(firm.m1, tau);
        }
        if (firm.m2 > 0.0) {
            e += firm.tc2.with_initial(l2).laplace_exponent(firm.m2, tau);
        }
        return std::exp(-e);
    };

    RunningMean acc;
    std::vector<double> grid = uniform_grid(maturity, sim.dt);
    const std::size_t n = grid.size();
    std::vector<double> g3_cum(n, 0.0);
    for (std::int64_t path = 0; path < sim.n_paths; ++path) {
        PathRng rng(sim.seed, idx.stream(path), idx.flipped(path));

        IntensityPath lam1, lam2;
        if (need_tc1) {
            lam1 = sample_integrated_cir(firm.tc1, maturity, sim.dt, rng);
        }
        if (need_tc2) {
            lam2 = sample_integrated_ou_jump(firm.tc2, maturity, sim.dt, rng);
        }
        IntensityPath rate = sample_integrated_cir(firm.rate_base, maturity, sim.dt, rng);
        if (need_tc3) {
            g3_cum[0] = 0.0;
            for (std::size_t i = 1; i < n; ++i) {
                const double h = grid[i] - grid[i - 1];
                double inc;
                if (levy_gamma != nullptr) {
                    inc = sample_subordinator_increment(*levy_gamma, h, rng);
                } else if (levy_exp != nullptr) {
                    inc = sample_subordinator_increment(*levy_exp, h, rng);
                } else {
                    inc = sample_subordinator_increment(*levy_ig, h, rng);
                }
                g3_cum[i] = g3_cum[i - 1] + inc;
            }
        }
        const double t_star = sample_passage_time(firm.brownian, rng);

        auto clock_at = [&](std::size_t i) {
            double g = 0.0;
            if (need_tc1 && firm.alpha1 > 0.0) {
                g += firm.alpha1 * lam1.integral[i];
            }
            if (need_tc2 && firm.alpha2 > 0.0) {
                g += firm.alpha2 * lam2.integral[i];
            }
            if (need_tc3) {
                g += firm.alpha3 * g3_cum[i];
            }
            return g;
        };
        auto discount_at = [&](std::size_t i) {
            double r = rate.integral[i];
            if (firm.m1 > 0.0) {
                r += firm.m1 * lam1.integral[i];
            }
            if (firm.m2 > 0.0) {
                r += firm.m2 * lam2.integral[i];
            }
            return r;
        };

        std::size_t default_idx = n;  // first grid index with G >= t*
        for (std::size_t i = 1; i < n; ++i) {
            if (clock_at(i) >= t_star) {
                default_idx = i;
                break;
            }
        }
        const bool survived = clock_at(n - 1) < t_star;

        double value = 0.0;
        switch (payoff) {
            case PayoffKind::ZeroRecoveryBond:
                value = survived ? std::exp(-discount_at(n - 1)) : 0.0;
                break;
            case PayoffKind::RecoveryBond: {
                if (survived) {
                    value = std::exp(-discount_at(n - 1));
                } else {
                    const double tau = maturity - grid[default_idx];
                    const double treasury =
                        bond_at_state(tau, rate.level[default_idx],
                                      need_tc1 ? lam1.level[default_idx] : 0.0,
                                      need_tc2 ? lam2.level[default_idx] : 0.0);
                    value = recovery * std::exp(-discount_at(default_idx)) * treasury;
                }
                break;
            }
            case PayoffKind::CdsDefaultLeg: {
                if (!survived) {
                    const double tau = maturity - grid[default_idx];
                    const double treasury =
                        bond_at_state(tau, rate.level[default_idx],
                                      need_tc1 ? lam1.level[default_idx] : 0.0,
                                      need_tc2 ? lam2.level[default_idx] : 0.0);
                    value = (1.0 - recovery) * std::exp(-discount_at(default_idx)) * treasury;
                }
                break;
            }
        }
        acc.add(value);
    }
    return acc.estimate();
}

}  // namespace tcbm
