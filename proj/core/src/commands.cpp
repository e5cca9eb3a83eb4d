#include "tcbm/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tcbm/mc.hpp"

namespace tcbm {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string spread_curve_csv(const Scenario& sc) {
    const FirmCredit firm = sc.firm();
    std::ostringstream out;
    out << "maturity_years,riskfree_price,zero_recovery_price,yield_spread\n";
    for (const double T : sc.grid.points()) {
        const double rf = riskfree_bond(firm, T);
        const double zr = zero_recovery_bond(firm, T, sc.quadrature);
        const double spread = -std::log(zr / rf) / T;
        out << num(T) << ',' << num(rf) << ',' << num(zr) << ',' << num(spread) << '\n';
    }
    return out.str();
}

std::string default_pdf_csv(const Scenario& sc) {
    const FirmCredit firm = sc.firm();
    const std::vector<double> t = sc.grid.points();
    std::vector<double> cdf(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        cdf[i] = default_probability(firm, t[i], sc.quadrature);
    }
    std::ostringstream out;
    out << "t_years,pdf,cdf\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
        double pdf;
        if (i == 0) {
            pdf = (cdf[1] - cdf[0]) / (t[1] - t[0]);
        } else if (i + 1 == t.size()) {
            pdf = (cdf[i] - cdf[i - 1]) / (t[i] - t[i - 1]);
        } else {
            pdf = (cdf[i + 1] - cdf[i - 1]) / (t[i + 1] - t[i - 1]);
        }
        out << num(t[i]) << ',' << num(pdf) << ',' << num(cdf[i]) << '\n';
    }
    return out.str();
}

std::string bond_price_csv(const Scenario& sc) {
    const FirmCredit firm = sc.firm();
    std::ostringstream out;
    out << "maturity_years,riskfree_price,zero_recovery_price,recovery_price\n";
    for (const double T : sc.grid.points()) {
        const double rf = riskfree_bond(firm, T);
        const double zr = zero_recovery_bond(firm, T, sc.quadrature);
        const double rec = (1.0 - firm.recovery) * zr + firm.recovery * rf;
        out << num(T) << ',' << num(rf) << ',' << num(zr) << ',' << num(rec) << '\n';
    }
    return out.str();
}

std::string cds_spread_csv(const Scenario& sc) {
    const FirmCredit firm = sc.firm();
    std::ostringstream out;
    out << "maturity_years,premium_leg_value,default_leg_value,cds_spread\n";
    for (const double T : sc.grid.points()) {
        const CdsLegs legs = cds_legs(firm, T, 64, sc.quadrature);
        out << num(T) << ',' << num(legs.premium_unit) << ',' << num(legs.default_leg) << ','
            << num(legs.default_leg / legs.premium_unit) << '\n';
    }
    return out.str();
}

std::string portfolio_loss_csv(const Scenario& sc) {
    if (!sc.portfolio) {
        throw ScenarioError("portfolio-loss: scenario has no [portfolio.firm.*] sections");
    }
    const PortfolioSpec spec = sc.portfolio_spec();
    const double horizon = sc.grid.stop;
    const LossDistribution dist = loss_distribution(spec, horizon, sc.quadrature);
    std::ostringstream out;
    out << "loss_level,probability\n";
    for (std::size_t i = 0; i < dist.level.size(); ++i) {
        out << num(dist.level[i]) << ',' << num(dist.probability[i]) << '\n';
    }
    return out.str();
}

std::string mc_validate_csv(const Scenario& sc) {
    const FirmCredit firm = sc.firm();
    const ConvexCombination clock = firm.combined_change();
    std::ostringstream out;
    out << "quantity,analytic,mc_estimate,mc_stderr,z_score\n";

    auto row = [&](const std::string& label, double analytic, const McEstimate& mc) {
        double z = 0.0;
        if (mc.std_error > 0.0) {
            z = (mc.mean - analytic) / mc.std_error;
        } else if (mc.mean != analytic) {
            z = std::numeric_limits<double>::infinity();
        }
        out << label << ',' << num(analytic) << ',' << num(mc.mean) << ',' << num(mc.std_error)
            << ',' << num(z) << '\n';
    };

    const double t_mid = std::min(5.0, sc.grid.stop);
    for (const double u : {0.5, 2.0}) {
        const double analytic = std::exp(-clock.laplace_exponent(u, t_mid));
        const McEstimate mc = mc_laplace_transform(clock, u, t_mid, sc.sim);
        std::ostringstream label;
        label << "clock_laplace_u" << u << "_t" << t_mid;
        row(label.str(), analytic, mc);
    }

    std::vector<double> t_checks;
    for (const double t : {1.0, 5.0, 10.0}) {
        if (t >= sc.grid.start && t <= sc.grid.stop) {
            t_checks.push_back(t);
        }
    }
    if (t_checks.empty()) {
        t_checks.push_back(sc.grid.stop);
    }
    const McCdf cdf = mc_second_passage_cdf(clock, firm.brownian, t_checks, sc.sim);
    for (std::size_t i = 0; i < t_checks.size(); ++i) {
        const double analytic = default_probability(firm, t_checks[i], sc.quadrature);
        std::ostringstream label;
        label << "default_prob_t" << t_checks[i];
        row(label.str(), analytic, {cdf.estimate[i], cdf.std_error[i]});
    }

    if (sc.rates.active()) {
        const double T = t_mid;
        const double analytic = zero_recovery_bond(firm, T, sc.quadrature);
        const McEstimate mc = mc_price(firm, PayoffKind::ZeroRecoveryBond, T, sc.sim);
        std::ostringstream label;
        label << "zero_recovery_bond_T" << T;
        row(label.str(), analytic, mc);
    }
    return out.str();
}

}  // namespace

Command parse_command(std::string_view name) {
    if (name == "spread-curve") return Command::SpreadCurve;
    if (name == "default-pdf") return Command::DefaultPdf;
    if (name == "bond-price") return Command::BondPrice;
    if (name == "cds-spread") return Command::CdsSpread;
    if (name == "portfolio-loss") return Command::PortfolioLoss;
    if (name == "mc-validate") return Command::McValidate;
    throw std::invalid_argument("unknown command '" + std::string(name) + "'");
}

std::string command_name(Command cmd) {
    switch (cmd) {
        case Command::SpreadCurve: return "spread-curve";
        case Command::DefaultPdf: return "default-pdf";
        case Command::BondPrice: return "bond-price";
        case Command::CdsSpread: return "cds-spread";
        case Command::PortfolioLoss: return "portfolio-loss";
        case Command::McValidate: return "mc-validate";
    }
    return "?";
}

std::string run_command_csv(Command cmd, const Scenario& scenario) {
    switch (cmd) {
        case Command::SpreadCurve: return spread_curve_csv(scenario);
        case Command::DefaultPdf: return default_pdf_csv(scenario);
        case Command::BondPrice: return bond_price_csv(scenario);
        case Command::CdsSpread: return cds_spread_csv(scenario);
        case Command::PortfolioLoss: return portfolio_loss_csv(scenario);
        case Command::McValidate: return mc_validate_csv(scenario);
    }
    throw std::invalid_argument("run_command_csv: bad command");
}

void run_command(Command cmd, const Scenario& scenario, const std::string& out_path) {
    // build the full text first so a failed computation leaves no file behind
    const std::string csv = run_command_csv(cmd, scenario);
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + out_path);
    }
    out << csv;
    if (!out.good()) {
        throw std::runtime_error("failed writing output file: " + out_path);
    }
}

}  // namespace tcbm
