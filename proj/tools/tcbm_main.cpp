#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tcbm/commands.hpp"
#include "tcbm/errors.hpp"
#include "tcbm/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string scenario;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> paths;
    std::optional<double> tol;
    std::optional<std::string> maturity_grid;
};

tcbm::Scenario load_scenario(const std::string& ref) {
    if (tcbm::is_builtin_scenario(ref)) {
        return tcbm::builtin_scenario(ref);
    }
    std::ifstream in(ref, std::ios::binary);
    if (!in) {
        throw tcbm::ScenarioError("cannot open scenario file or unknown builtin: " + ref);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return tcbm::parse_scenario(buf.str());
}

tcbm::GridSpec parse_grid_override(const std::string& text) {
    std::istringstream in(text);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(in, part, ',')) {
        parts.push_back(part);
    }
    if (parts.size() != 4) {
        throw tcbm::ScenarioError(
            "--maturity-grid expects start,stop,count,linear|log");
    }
    tcbm::GridSpec grid;
    grid.start = std::stod(parts[0]);
    grid.stop = std::stod(parts[1]);
    grid.count = std::stoi(parts[2]);
    if (parts[3] == "log") {
        grid.log_spacing = true;
    } else if (parts[3] == "linear") {
        grid.log_spacing = false;
    } else {
        throw tcbm::ScenarioError("--maturity-grid spacing must be 'linear' or 'log'");
    }
    grid.validate();
    return grid;
}

void apply_overrides(tcbm::Scenario& sc, const Options& opt) {
    if (opt.seed) {
        sc.sim.seed = *opt.seed;
    }
    if (opt.paths) {
        sc.sim.n_paths = *opt.paths;
        sc.sim.validate();
    }
    if (opt.tol) {
        sc.quadrature.abs_tol = *opt.tol;
        sc.quadrature.validate();
    }
    if (opt.maturity_grid) {
        sc.grid = parse_grid_override(*opt.maturity_grid);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structural credit analytics for time-changed Brownian motion models"};
    app.require_subcommand(1);

    Options opt;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"spread-curve", "Risk-free and zero-recovery bond prices with yield spreads"},
        {"default-pdf", "Default time density and CDF over the maturity grid"},
        {"bond-price", "Bond prices including the recovery-of-treasury bond"},
        {"cds-spread", "CDS legs and par spreads over the maturity grid"},
        {"portfolio-loss", "Portfolio loss distribution at the grid horizon"},
        {"mc-validate", "Monte Carlo cross-checks of the analytic values"},
    };
    for (const auto& [name, description] : commands) {
        auto* sub = app.add_subcommand(name, description);
        sub->add_option("--scenario", opt.scenario, "Scenario file path or builtin name")
            ->required();
        sub->add_option("--out", opt.out, "Output CSV path")->required();
        sub->add_option("--seed", opt.seed, "Override the simulation seed");
        sub->add_option("--paths", opt.paths, "Override the simulation path count");
        sub->add_option("--tol", opt.tol, "Override the quadrature tolerance");
        sub->add_option("--maturity-grid", opt.maturity_grid,
                        "Override the maturity grid: start,stop,count,linear|log");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        tcbm::Scenario scenario = load_scenario(opt.scenario);
        apply_overrides(scenario, opt);
        for (const auto& warning : scenario.consistency_warnings()) {
            std::cerr << "warning: " << warning << "\n";
        }
        const tcbm::Command cmd = tcbm::parse_command(app.get_subcommands().front()->get_name());
        tcbm::run_command(cmd, scenario, opt.out);
        return kExitOk;
    } catch (const tcbm::ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
