#include "tcbm/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tcbm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegenerateX = 1e-10;
constexpr double kLatticeTol = 1e-9;

// Inversion integral (1/pi) Re int_0^inf e^{-i theta v} phi(theta) d theta
// for the drift-stripped continuous part phi(theta) = e^{-psi_J(-i theta)} - atom.
double invert_density_at(const TimeChange& tc, double t, double floor_shift, double atom,
                         double v, const QuadratureConfig& q) {
    auto f = [&](double theta) -> Complex {
        const Complex arg(0.0, -theta);
        Complex psi = tc.laplace_exponent(arg, t);
        psi -= Complex(0.0, -theta * floor_shift);  // remove the deterministic floor
        return std::exp(Complex(0.0, -theta * v) - psi) -
               atom * std::exp(Complex(0.0, -theta * v));
    };
    const double width = kPi / v;
    return oscillating_integral_complex(f, 0.5 * width, width, q).real() / kPi;
}

struct ConditionalTable {
    DensityTable mixing;
    // survival[m][j]: conditional survival of firm m at mixing node j; the
    // last entry (index n) conditions on the atom location when present.
    std::vector<std::vector<double>> survival;
};

ConditionalTable build_conditional_table(const PortfolioSpec& portfolio, double t,
                                         const QuadratureConfig& q) {
    ConditionalTable table;
    table.mixing = mixing_density(*portfolio.common, t, portfolio.n_y, portfolio.k_std, q);
    const std::size_t n = table.mixing.y.size();
    table.survival.resize(portfolio.firms.size());
    for (std::size_t m = 0; m < portfolio.firms.size(); ++m) {
        auto& row = table.survival[m];
        row.resize(n + 1, 1.0);
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = conditional_survival(portfolio.firms[m], table.mixing.y[j], t, q);
        }
        if (table.mixing.atom_mass > 0.0) {
            row[n] = conditional_survival(portfolio.firms[m], table.mixing.atom_y, t, q);
        }
    }
    return table;
}

double lattice_gcd(double a, double b) {
    // Euclid on positive reals with a tolerance for float weights.
    while (b > kLatticeTol) {
        double r = std::fmod(a, b);
        if (r > b - kLatticeTol) {
            r = 0.0;
        }
        a = b;
        b = r;
    }
    return a;
}

}  // namespace

void FirmFactorSpec::validate() const {
    brownian.validate_passage();
    if (!(alpha >= 0.0) || !(alpha <= 1.0)) {
        throw std::invalid_argument("FirmFactorSpec: alpha must lie in [0, 1]");
    }
    if (!idio) {
        throw std::invalid_argument("FirmFactorSpec: idiosyncratic time change required");
    }
    if (!(loss_weight >= 0.0) || !std::isfinite(loss_weight)) {
        throw std::invalid_argument("FirmFactorSpec: loss_weight must be finite and >= 0");
    }
}

void PortfolioSpec::validate() const {
    if (!common) {
        throw std::invalid_argument("PortfolioSpec: common time change required");
    }
    if (firms.empty()) {
        throw std::invalid_argument("PortfolioSpec: needs at least one firm");
    }
    if (n_y < 16) {
        throw std::invalid_argument("PortfolioSpec: n_y must be at least 16");
    }
    if (!(k_std > 0.0)) {
        throw std::invalid_argument("PortfolioSpec: k_std must be positive");
    }
    for (const auto& firm : firms) {
        firm.validate();
    }
}

double conditional_survival(const FirmFactorSpec& firm, double y, double t,
                            const QuadratureConfig& q) {
    firm.validate();
    q.validate();
    if (!(y >= 0.0)) {
        throw std::invalid_argument("conditional_survival: y must be >= 0");
    }
    if (!(t > 0.0)) {
        throw std::invalid_argument("conditional_survival: t must be positive");
    }
    if (firm.brownian.x <= kDegenerateX) {
        return 0.0;
    }
    const double alpha = firm.alpha;
    if (alpha == 1.0 && y == 0.0) {
        return 1.0;  // no common time elapsed and no idiosyncratic exposure
    }
    auto exponent = [&](double u) {
        double e = alpha * y * u;
        if (alpha < 1.0) {
            e += firm.idio->laplace_exponent((1.0 - alpha) * u, t);
        }
        return e;
    };
    const double prefactor = std::exp(-firm.brownian.beta * firm.brownian.x);
    const double value = prefactor * detail::sine_kernel_transform(firm.brownian, exponent, q);
    const double slack = q.abs_tol * 10.0 * (1.0 + prefactor);
    return detail::clip_to_range(value, 0.0, 1.0, slack, "conditional_survival");
}

DensityTable mixing_density(const TimeChange& common, double t, int n_y, double k_std,
                            const QuadratureConfig& q) {
    q.validate();
    if (!(t > 0.0)) {
        throw std::invalid_argument("mixing_density: t must be positive");
    }
    if (n_y < 16) {
        throw std::invalid_argument("mixing_density: n_y must be at least 16");
    }
    if (!(k_std > 0.0)) {
        throw std::invalid_argument("mixing_density: k_std must be positive");
    }

    DensityTable table;
    if (const auto v = common.deterministic_value(t)) {
        table.atom_y = *v;
        table.atom_mass = 1.0;
        table.raw_mass = 1.0;
        return table;
    }

    const double mu = cumulant(common, t, 1);
    const double var = std::max(cumulant(common, t, 2), 0.0);
    const double sd = std::sqrt(var);
    const double floor = common.deterministic_floor(t);
    const double atom = common.atom_mass(t);
    const double span = std::max(mu - floor, 0.0) + k_std * sd;
    if (!(span > 0.0)) {
        throw NumericalError("mixing_density: degenerate grid span");
    }

    table.step = span / n_y;
    table.atom_y = floor;
    table.atom_mass = atom;
    table.y.resize(n_y);
    table.w.resize(n_y);
    for (int j = 0; j < n_y; ++j) {
        const double v = (j + 0.5) * table.step;  // distance above the floor
        double f = invert_density_at(common, t, floor, atom, v, q);
        if (f < 0.0) {
            f = 0.0;  // clip inversion ripples
        }
        table.y[j] = floor + v;
        table.w[j] = f * table.step;
    }

    table.raw_mass = table.total_mass();
    if (std::abs(table.raw_mass - 1.0) > 1e-3) {
        std::ostringstream msg;
        msg << "mixing_density: inversion mass " << table.raw_mass
            << " is not within 1e-3 of 1";
        throw NumericalError(msg.str());
    }
    // Renormalize the continuous part so downstream mixtures sum exactly.
    const double grid_mass = table.raw_mass - atom;
    if (grid_mass > 0.0) {
        const double scale = (1.0 - atom) / grid_mass;
        for (auto& w : table.w) {
            w *= scale;
        }
    }
    return table;
}

double joint_default_probability(const PortfolioSpec& portfolio, std::uint32_t defaulted_mask,
                                 double t, const QuadratureConfig& q) {
    portfolio.validate();
    const std::size_t m_count = portfolio.firms.size();
    if (m_count > 31) {
        throw std::invalid_argument("joint_default_probability: too many firms for a mask");
    }
    if (defaulted_mask >= (1u << m_count)) {
        throw std::invalid_argument("joint_default_probability: mask has bits beyond the firms");
    }
    const ConditionalTable table = build_conditional_table(portfolio, t, q);
    const std::size_t n = table.mixing.y.size();
    double acc = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
        const double weight = (j < n) ? table.mixing.w[j]
                                      : table.mixing.atom_mass;
        if (weight == 0.0) {
            continue;
        }
        double prod = 1.0;
        for (std::size_t m = 0; m < m_count; ++m) {
            const double surv = table.survival[m][std::min(j, n)];
            prod *= (defaulted_mask >> m & 1u) ? (1.0 - surv) : surv;
        }
        acc += weight * prod;
    }
    return std::clamp(acc, 0.0, 1.0);
}

std::vector<double> joint_default_distribution(const PortfolioSpec& portfolio, double t,
                                               const QuadratureConfig& q) {
    portfolio.validate();
    const std::size_t m_count = portfolio.firms.size();
    if (m_count > 20) {
        throw std::invalid_argument("joint_default_distribution: enumeration capped at 20 firms");
    }
    const ConditionalTable table = build_conditional_table(portfolio, t, q);
    const std::size_t n = table.mixing.y.size();
    std::vector<double> out(std::size_t{1} << m_count, 0.0);
    for (std::size_t j = 0; j <= n; ++j) {
        const double weight = (j < n) ? table.mixing.w[j] : table.mixing.atom_mass;
        if (weight == 0.0) {
            continue;
        }
        // expand the product over firms state by state
        std::vector<double> state(out.size(), 0.0);
        state[0] = weight;
        std::size_t active = 1;
        for (std::size_t m = 0; m < m_count; ++m) {
            const double surv = table.survival[m][std::min(j, n)];
            for (std::size_t mask = active; mask-- > 0;) {
                const double base = state[mask];
                if (base == 0.0) {
                    continue;
                }
                state[mask | (std::size_t{1} << m)] = base * (1.0 - surv);
                state[mask] = base * surv;
            }
            active <<= 1;
        }
        for (std::size_t mask = 0; mask < out.size(); ++mask) {
            out[mask] += state[mask];
        }
    }
    return out;
}

double LossDistribution::mean() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < level.size(); ++i) {
        acc += level[i] * probability[i];
    }
    return acc;
}

LossDistribution loss_distribution(const PortfolioSpec& portfolio, double t,
                                   const QuadratureConfig& q) {
    portfolio.validate();
    const std::size_t m_count = portfolio.firms.size();

    // Common lattice for the loss weights.
    double step = 0.0;
    for (const auto& firm : portfolio.firms) {
        if (firm.loss_weight > 0.0) {
            step = (step == 0.0) ? firm.loss_weight : lattice_gcd(std::max(step, firm.loss_weight),
                                                                  std::min(step, firm.loss_weight));
        }
    }
    if (step == 0.0) {
        throw std::invalid_argument("loss_distribution: all loss weights are zero");
    }
    std::vector<std::size_t> ticks(m_count);
    std::size_t total_ticks = 0;
    for (std::size_t m = 0; m < m_count; ++m) {
        const double w = portfolio.firms[m].loss_weight;
        const double k = std::round(w / step);
        if (std::abs(k * step - w) > kLatticeTol * std::max(1.0, w)) {
            throw std::invalid_argument(
                "loss_distribution: loss weights are not commensurable on the lattice; "
                "refine the lattice or adjust the weights");
        }
        ticks[m] = static_cast<std::size_t>(k);
        total_ticks += ticks[m];
    }

    const ConditionalTable table = build_conditional_table(portfolio, t, q);
    const std::size_t n = table.mixing.y.size();

    LossDistribution out;
    out.step = step;
    out.level.resize(total_ticks + 1);
    for (std::size_t i = 0; i <= total_ticks; ++i) {
        out.level[i] = static_cast<double>(i) * step;
    }
    out.probability.assign(total_ticks + 1, 0.0);

    std::vector<double> conditional(total_ticks + 1, 0.0);
    for (std::size_t j = 0; j <= n; ++j) {
        const double weight = (j < n) ? table.mixing.w[j] : table.mixing.atom_mass;
        if (weight == 0.0) {
            continue;
        }
        std::fill(conditional.begin(), conditional.end(), 0.0);
        conditional[0] = 1.0;
        std::size_t reach = 0;
        for (std::size_t m = 0; m < m_count; ++m) {
            const double surv = table.survival[m][std::min(j, n)];
            const double pd = 1.0 - surv;
            const std::size_t k = ticks[m];
            if (k == 0) {
                continue;  // zero-weight firm cannot move the lattice
            }
            for (std::size_t i = reach + 1; i-- > 0;) {
                const double base = conditional[i];
                if (base == 0.0) {
                    continue;
                }
                conditional[i] = base * surv;
                conditional[i + k] += base * pd;
            }
            reach += k;
        }
        for (std::size_t i = 0; i <= total_ticks; ++i) {
            out.probability[i] += weight * conditional[i];
        }
    }
    return out;
}

}  // namespace tcbm
