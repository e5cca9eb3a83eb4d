#pragma once

#include <string>
#include <string_view>

#include "tcbm/scenario.hpp"

namespace tcbm {

enum class Command {
    SpreadCurve,
    DefaultPdf,
    BondPrice,
    CdsSpread,
    PortfolioLoss,
    McValidate,
};

/// Maps the CLI spelling (spread-curve, default-pdf, bond-price, cds-spread,
/// portfolio-loss, mc-validate) to a command; throws std::invalid_argument
/// for anything else.
Command parse_command(std::string_view name);
std::string command_name(Command cmd);

/// Runs a command and returns the finished CSV text (header row first,
/// numbers with 12 significant digits, deterministic for a fixed scenario
/// and seed).
std::string run_command_csv(Command cmd, const Scenario& scenario);

/// Same, but writes to a file; any computation error propagates before the
/// file is created, so a failed run leaves no partial output.
void run_command(Command cmd, const Scenario& scenario, const std::string& out_path);

}  // namespace tcbm
