#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcbm/credit.hpp"
#include "tcbm/mc.hpp"
#include "tcbm/portfolio.hpp"
#include "tcbm/quadrature.hpp"

namespace tcbm {

/// Scenario text failed to parse or validate; the message carries the line
/// number or offending key.
class ScenarioError : public std::invalid_argument {
public:
    explicit ScenarioError(const std::string& what) : std::invalid_argument(what) {}
};

/// One time-change family with its parameters, as configured.
/// family: exponential | gamma | ig | cir | oujump
struct FamilyConfig {
    std::string family = "gamma";
    double a = 1.0;
    double b = 0.0;
    double c = 1.0;
    double lambda0 = 1.0;     // cir / oujump only
    double beta_tilde = 1.0;  // ig only
    double gamma_tilde = 1.0;

    bool operator==(const FamilyConfig&) const = default;

    std::shared_ptr<const TimeChange> build(bool require_normalized = false) const;
};

struct RatesConfig {
    double a = 0.0;
    double b = 1.0;
    double c = 0.0;
    double r0 = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;

    bool operator==(const RatesConfig&) const = default;
    bool active() const { return a != 0.0 || c != 0.0 || r0 != 0.0 || m1 != 0.0 || m2 != 0.0; }
};

struct GridSpec {
    double start = 0.05;
    double stop = 30.0;
    int count = 120;
    bool log_spacing = true;

    bool operator==(const GridSpec&) const = default;
    std::vector<double> points() const;
    void validate() const;
};

struct PortfolioFirmConfig {
    double L0 = 1.0;
    double sigma2 = 0.09;
    double beta = -0.5;
    double alpha = 0.5;
    double weight = 1.0;
    FamilyConfig idio;

    bool operator==(const PortfolioFirmConfig&) const = default;
};

struct PortfolioConfig {
    int n_y = 2048;
    double k_std = 12.0;
    std::vector<PortfolioFirmConfig> firms;

    bool operator==(const PortfolioConfig&) const = default;
};

/// A full scenario: the single-firm credit model, numerical settings and the
/// optional multifirm section. The scenario's combined time change doubles as
/// the common factor of the portfolio.
struct Scenario {
    std::string name = "custom";
    // [brownian]
    double L0 = 1.5;
    double sigma2 = 0.09;
    double beta = -0.5;
    // [timechange]
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double alpha3 = 1.0;
    // [timechange.levy] (required when alpha3 > 0)
    std::optional<FamilyConfig> levy;
    // [timechange.cir], [timechange.oujump]
    std::optional<FamilyConfig> cir;
    std::optional<FamilyConfig> oujump;
    RatesConfig rates;
    double recovery = 0.0;
    GridSpec grid;
    QuadratureConfig quadrature;
    SimConfig sim;
    std::optional<PortfolioConfig> portfolio;

    bool operator==(const Scenario&) const = default;

    FirmCredit firm() const;
    PortfolioSpec portfolio_spec() const;

    /// Soft consistency notes, e.g. the annualized-variance convention for
    /// the gamma-clock parametrizations.
    std::vector<std::string> consistency_warnings() const;
};

/// Parse the sectioned key=value scenario format. Unknown sections or keys
/// and invariant violations raise ScenarioError with the line or key named.
Scenario parse_scenario(std::string_view text);

/// Serialize with full precision; parse(emit(s)) == s.
std::string emit_scenario(const Scenario& s);

bool is_builtin_scenario(std::string_view name);
Scenario builtin_scenario(std::string_view name);  // modelA .. modelD
std::vector<std::string> builtin_scenario_names();

}  // namespace tcbm
