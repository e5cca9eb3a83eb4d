#include "tcbm/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace tcbm {

namespace {

std::string trim(std::string_view sv) {
    const auto begin = sv.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) {
        return {};
    }
    const auto end = sv.find_last_not_of(" \t\r");
    return std::string(sv.substr(begin, end - begin + 1));
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw ScenarioError("scenario line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& value, int line, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) {
            fail(line, "trailing characters in value for '" + key + "'");
        }
        return v;
    } catch (const ScenarioError&) {
        throw;
    } catch (const std::exception&) {
        fail(line, "cannot parse number for '" + key + "': " + value);
    }
}

std::int64_t parse_int(const std::string& value, int line, const std::string& key) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size()) {
            fail(line, "trailing characters in value for '" + key + "'");
        }
        return v;
    } catch (const ScenarioError&) {
        throw;
    } catch (const std::exception&) {
        fail(line, "cannot parse integer for '" + key + "': " + value);
    }
}

bool parse_bool(const std::string& value, int line, const std::string& key) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") {
        return true;
    }
    if (value == "false" || value == "0" || value == "no" || value == "off") {
        return false;
    }
    fail(line, "cannot parse boolean for '" + key + "': " + value);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const std::set<std::string> kLevyFamilies = {"exponential", "gamma", "ig"};
const std::set<std::string> kAllFamilies = {"exponential", "gamma", "ig", "cir", "oujump"};

struct FamilyKeys {
    // which keys a family accepts / requires
    static std::set<std::string> accepted(const std::string& family) {
        if (family == "ig") {
            return {"family", "beta_tilde", "gamma_tilde"};
        }
        if (family == "cir" || family == "oujump") {
            return {"family", "a", "b", "c", "lambda0"};
        }
        return {"family", "a", "b", "c"};
    }
};

void apply_family_key(FamilyConfig& fam, const std::string& key, const std::string& value,
                      int line) {
    if (key == "family") {
        fam.family = value;
    } else if (key == "a") {
        fam.a = parse_double(value, line, key);
    } else if (key == "b") {
        fam.b = parse_double(value, line, key);
    } else if (key == "c") {
        fam.c = parse_double(value, line, key);
    } else if (key == "lambda0") {
        fam.lambda0 = parse_double(value, line, key);
    } else if (key == "beta_tilde") {
        fam.beta_tilde = parse_double(value, line, key);
    } else if (key == "gamma_tilde") {
        fam.gamma_tilde = parse_double(value, line, key);
    } else {
        fail(line, "unknown time-change key '" + key + "'");
    }
}

struct RawSection {
    int line = 0;
    std::vector<std::tuple<std::string, std::string, int>> entries;  // key, value, line
};

}  // namespace

// ---------------------------------------------------------------------------
// FamilyConfig

std::shared_ptr<const TimeChange> FamilyConfig::build(bool require_normalized) const {
    if (family == "exponential") {
        return std::make_shared<ExponentialSubordinator>(a, b, c, require_normalized);
    }
    if (family == "gamma") {
        return std::make_shared<GammaSubordinator>(a, b, c, require_normalized);
    }
    if (family == "ig") {
        return std::make_shared<InverseGaussianSubordinator>(beta_tilde, gamma_tilde,
                                                             require_normalized);
    }
    if (family == "cir") {
        return std::make_shared<IntegratedCir>(a, b, c, lambda0, require_normalized);
    }
    if (family == "oujump") {
        return std::make_shared<IntegratedOuJump>(a, b, c, lambda0, require_normalized);
    }
    throw ScenarioError("unknown time-change family '" + family + "'");
}

// ---------------------------------------------------------------------------
// GridSpec

void GridSpec::validate() const {
    if (!(start > 0.0) || !(stop > start)) {
        throw ScenarioError("grid: need 0 < start < stop");
    }
    if (count < 2) {
        throw ScenarioError("grid: count must be at least 2");
    }
}

std::vector<double> GridSpec::points() const {
    validate();
    std::vector<double> out(count);
    if (log_spacing) {
        const double l0 = std::log(start);
        const double l1 = std::log(stop);
        for (int i = 0; i < count; ++i) {
            out[i] = std::exp(l0 + (l1 - l0) * i / (count - 1));
        }
    } else {
        for (int i = 0; i < count; ++i) {
            out[i] = start + (stop - start) * i / (count - 1);
        }
    }
    out.front() = start;
    out.back() = stop;
    return out;
}

// ---------------------------------------------------------------------------
// Scenario -> model objects

FirmCredit Scenario::firm() const {
    FirmCredit f;
    f.brownian = BrownianParams{L0, std::sqrt(sigma2), beta};
    f.alpha1 = alpha1;
    f.alpha2 = alpha2;
    f.alpha3 = alpha3;
    if (cir) {
        f.tc1 = IntegratedCir(cir->a, cir->b, cir->c, cir->lambda0);
    } else {
        f.tc1 = IntegratedCir(0.0, 1.0, 0.0, 0.0);
    }
    if (oujump) {
        f.tc2 = IntegratedOuJump(oujump->a, oujump->b, oujump->c, oujump->lambda0);
    } else {
        f.tc2 = IntegratedOuJump(1.0, 1.0, 0.0, 0.0);
    }
    if (levy) {
        f.tc3 = levy->build();
    }
    f.rate_base = IntegratedCir(rates.a, rates.b, rates.c, rates.r0);
    f.m1 = rates.m1;
    f.m2 = rates.m2;
    f.recovery = recovery;
    f.validate();
    return f;
}

PortfolioSpec Scenario::portfolio_spec() const {
    if (!portfolio) {
        throw ScenarioError("scenario has no [portfolio] section");
    }
    PortfolioSpec spec;
    spec.common = std::make_shared<ConvexCombination>(firm().combined_change());
    spec.n_y = portfolio->n_y;
    spec.k_std = portfolio->k_std;
    for (const auto& fc : portfolio->firms) {
        FirmFactorSpec firm_spec;
        firm_spec.brownian = BrownianParams{fc.L0, std::sqrt(fc.sigma2), fc.beta};
        firm_spec.alpha = fc.alpha;
        firm_spec.idio = fc.idio.build();
        firm_spec.loss_weight = fc.weight;
        spec.firms.push_back(std::move(firm_spec));
    }
    spec.validate();
    return spec;
}

std::vector<std::string> Scenario::consistency_warnings() const {
    std::vector<std::string> out;
    // Single-name parametrizations pin the one-year variance of the
    // log-leverage at 0.09: sigma^2 + beta^2 sigma^4 (2/a + 1) for the gamma
    // clock, plain sigma^2 for a deterministic clock.
    const double target = 0.09;
    std::optional<double> implied;
    if (levy && alpha3 == 1.0) {
        if (levy->family == "gamma") {
            implied = sigma2 + beta * beta * sigma2 * sigma2 * (2.0 / levy->a + 1.0);
        } else if (levy->family == "exponential" && levy->c == 0.0) {
            implied = sigma2;
        }
    }
    if (implied && std::abs(*implied - target) > 1e-3) {
        std::ostringstream msg;
        msg << "scenario '" << name << "': annualized variance convention gives " << *implied
            << ", expected " << target << " (sigma2 may be off)";
        out.push_back(msg.str());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

Scenario parse_scenario(std::string_view text) {
    std::map<std::string, RawSection> sections;
    std::vector<std::string> section_order;

    std::string current;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string_view raw =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;
        std::string line = trim(raw);
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line = trim(line.substr(0, hash));
        }
        if (line.empty() || line[0] == ';') {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                fail(line_no, "unterminated section header");
            }
            current = trim(line.substr(1, line.size() - 2));
            if (current.empty()) {
                fail(line_no, "empty section name");
            }
            if (!sections.count(current)) {
                sections[current].line = line_no;
                section_order.push_back(current);
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            fail(line_no, "expected 'key = value' or a [section] header");
        }
        if (current.empty()) {
            fail(line_no, "key outside any section");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            fail(line_no, "empty key");
        }
        auto& sec = sections[current];
        for (const auto& [k, v, l] : sec.entries) {
            if (k == key) {
                fail(line_no, "duplicate key '" + key + "' (first at line " + std::to_string(l) +
                                  ")");
            }
        }
        sec.entries.emplace_back(key, value, line_no);
    }

    Scenario sc;
    std::set<std::string> known = {"model",          "brownian",        "timechange",
                                   "timechange.levy", "timechange.cir", "timechange.oujump",
                                   "rates",          "recovery",        "grid",
                                   "quadrature",     "mc",              "portfolio"};
    for (const auto& name : section_order) {
        if (known.count(name) || name.rfind("portfolio.firm.", 0) == 0) {
            continue;
        }
        fail(sections[name].line, "unknown section [" + name + "]");
    }

    auto has = [&](const std::string& s) { return sections.count(s) != 0; };

    if (has("model")) {
        for (const auto& [key, value, line] : sections["model"].entries) {
            if (key == "name") {
                sc.name = value;
            } else {
                fail(line, "unknown key '" + key + "' in [model]");
            }
        }
    }

    if (!has("brownian")) {
        throw ScenarioError("scenario: missing required section [brownian] (keys L0, sigma2, beta)");
    }
    {
        std::set<std::string> seen;
        for (const auto& [key, value, line] : sections["brownian"].entries) {
            seen.insert(key);
            if (key == "L0") {
                sc.L0 = parse_double(value, line, key);
            } else if (key == "sigma2") {
                sc.sigma2 = parse_double(value, line, key);
            } else if (key == "beta") {
                sc.beta = parse_double(value, line, key);
            } else {
                fail(line, "unknown key '" + key + "' in [brownian]");
            }
        }
        for (const char* req : {"L0", "sigma2", "beta"}) {
            if (!seen.count(req)) {
                throw ScenarioError(std::string("scenario: [brownian] is missing required key '") +
                                    req + "'");
            }
        }
    }

    if (has("timechange")) {
        std::set<std::string> seen;
        for (const auto& [key, value, line] : sections["timechange"].entries) {
            seen.insert(key);
            if (key == "alpha1") {
                sc.alpha1 = parse_double(value, line, key);
            } else if (key == "alpha2") {
                sc.alpha2 = parse_double(value, line, key);
            } else if (key == "alpha3") {
                sc.alpha3 = parse_double(value, line, key);
            } else {
                fail(line, "unknown key '" + key + "' in [timechange]");
            }
        }
        if (seen.empty()) {
            throw ScenarioError(
                "scenario: [timechange] is empty; required keys: alpha1, alpha2, alpha3");
        }
        for (const char* req : {"alpha1", "alpha2", "alpha3"}) {
            if (!seen.count(req)) {
                throw ScenarioError(
                    std::string("scenario: [timechange] is missing required key '") + req + "'");
            }
        }
    }

    auto parse_family = [&](const std::string& section, bool levy_only) {
        FamilyConfig fam;
        bool family_seen = false;
        // first pass for the family name so key checking knows the shape
        for (const auto& [key, value, line] : sections[section].entries) {
            if (key == "family") {
                fam.family = value;
                family_seen = true;
                if (!kAllFamilies.count(value)) {
                    fail(line, "unknown family '" + value + "'");
                }
                if (levy_only && !kLevyFamilies.count(value)) {
                    fail(line, "family '" + value + "' is not a Levy subordinator");
                }
            }
        }
        if (!family_seen) {
            throw ScenarioError("scenario: [" + section + "] is missing required key 'family'" +
                                " (then a, b, c or beta_tilde, gamma_tilde)");
        }
        const auto accepted = FamilyKeys::accepted(fam.family);
        for (const auto& [key, value, line] : sections[section].entries) {
            if (!accepted.count(key)) {
                fail(line, "key '" + key + "' does not apply to family '" + fam.family + "'");
            }
            apply_family_key(fam, key, value, line);
        }
        return fam;
    };

    if (has("timechange.levy")) {
        sc.levy = parse_family("timechange.levy", true);
    }
    if (has("timechange.cir")) {
        FamilyConfig fam = parse_family("timechange.cir", false);
        if (fam.family != "cir") {
            throw ScenarioError("scenario: [timechange.cir] must have family = cir");
        }
        sc.cir = fam;
    }
    if (has("timechange.oujump")) {
        FamilyConfig fam = parse_family("timechange.oujump", false);
        if (fam.family != "oujump") {
            throw ScenarioError("scenario: [timechange.oujump] must have family = oujump");
        }
        sc.oujump = fam;
    }

    if (has("rates")) {
        for (const auto& [key, value, line] : sections["rates"].entries) {
            if (key == "a") {
                sc.rates.a = parse_double(value, line, key);
            } else if (key == "b") {
                sc.rates.b = parse_double(value, line, key);
            } else if (key == "c") {
                sc.rates.c = parse_double(value, line, key);
            } else if (key == "r0") {
                sc.rates.r0 = parse_double(value, line, key);
            } else if (key == "m1") {
                sc.rates.m1 = parse_double(value, line, key);
            } else if (key == "m2") {
                sc.rates.m2 = parse_double(value, line, key);
            } else {
                fail(line, "unknown key '" + key + "' in [rates]");
            }
        }
    }

    if (has("recovery")) {
        for (const auto& [key, value, line] : sections["recovery"].entries) {
            if (key == "R") {
                sc.recovery = parse_double(value, line, key);
            } else {
                fail(line, "unknown key '" + key + "' in [recovery]");
            }
        }
    }

    if (has("grid")) {
        for (const auto& [key, value, line] : sections["grid"].entries) {
            if (key == "start") {
                sc.grid.start = parse_double(value, line, key);
            } else if (key == "stop") {
                sc.grid.stop = parse_double(value, line, key);
            } else if (key == "count") {
                sc.grid.count = static_cast<int>(parse_int(value, line, key));
            } else if (key == "spacing") {
                if (value == "log") {
                    sc.grid.log_spacing = true;
                } else if (value == "linear") {
                    sc.grid.log_spacing = false;
                } else {
                    fail(line, "spacing must be 'linear' or 'log'");
                }
            } else {
                fail(line, "unknown key '" + key + "' in [grid]");
            }
        }
    }

    if (has("quadrature")) {
        for (const auto& [key, value, line] : sections["quadrature"].entries) {
            if (key == "abs_tol") {
                sc.quadrature.abs_tol = parse_double(value, line, key);
            } else if (key == "max_panels") {
                sc.quadrature.max_panels = static_cast<int>(parse_int(value, line, key));
            } else if (key == "acceleration_order") {
                sc.quadrature.acceleration_order = static_cast<int>(parse_int(value, line, key));
            } else {
                fail(line, "unknown key '" + key + "' in [quadrature]");
            }
        }
    }

    if (has("mc")) {
        for (const auto& [key, value, line] : sections["mc"].entries) {
            if (key == "seed") {
                sc.sim.seed = static_cast<std::uint64_t>(parse_int(value, line, key));
            } else if (key == "paths") {
                sc.sim.n_paths = parse_int(value, line, key);
            } else if (key == "dt") {
                sc.sim.dt = parse_double(value, line, key);
            } else if (key == "antithetic") {
                sc.sim.antithetic = parse_bool(value, line, key);
            } else {
                fail(line, "unknown key '" + key + "' in [mc]");
            }
        }
    }

    if (has("portfolio")) {
        sc.portfolio = PortfolioConfig{};
        for (const auto& [key, value, line] : sections["portfolio"].entries) {
            if (key == "n_y") {
                sc.portfolio->n_y = static_cast<int>(parse_int(value, line, key));
            } else if (key == "k_std") {
                sc.portfolio->k_std = parse_double(value, line, key);
            } else {
                fail(line, "unknown key '" + key + "' in [portfolio]");
            }
        }
    }
    // firm sections must be contiguous starting at 1
    for (int firm_idx = 1;; ++firm_idx) {
        const std::string section = "portfolio.firm." + std::to_string(firm_idx);
        if (!has(section)) {
            break;
        }
        if (!sc.portfolio) {
            sc.portfolio = PortfolioConfig{};
        }
        PortfolioFirmConfig fc;
        std::set<std::string> seen;
        for (const auto& [key, value, line] : sections[section].entries) {
            seen.insert(key);
            if (key == "L0") {
                fc.L0 = parse_double(value, line, key);
            } else if (key == "sigma2") {
                fc.sigma2 = parse_double(value, line, key);
            } else if (key == "beta") {
                fc.beta = parse_double(value, line, key);
            } else if (key == "alpha") {
                fc.alpha = parse_double(value, line, key);
            } else if (key == "weight") {
                fc.weight = parse_double(value, line, key);
            } else if (key.rfind("idio.", 0) == 0) {
                apply_family_key(fc.idio, key.substr(5), value, line);
            } else {
                fail(line, "unknown key '" + key + "' in [" + section + "]");
            }
        }
        if (!seen.count("L0") || !seen.count("alpha")) {
            throw ScenarioError("scenario: [" + section + "] requires at least L0 and alpha");
        }
        sc.portfolio->firms.push_back(std::move(fc));
    }
    for (const auto& name : section_order) {
        if (name.rfind("portfolio.firm.", 0) == 0) {
            const int idx = std::atoi(name.substr(15).c_str());
            if (idx < 1 ||
                static_cast<std::size_t>(idx) > (sc.portfolio ? sc.portfolio->firms.size() : 0)) {
                fail(sections[name].line, "portfolio firm sections must be numbered 1..N");
            }
        }
    }

    // cross-field invariants, named by key
    if (!(sc.sigma2 > 0.0)) {
        throw ScenarioError("scenario: sigma2 must be positive");
    }
    if (!(sc.L0 > 0.0)) {
        throw ScenarioError("scenario: L0 must be positive");
    }
    for (const auto& [key, v] :
         std::initializer_list<std::pair<const char*, double>>{{"alpha1", sc.alpha1},
                                                               {"alpha2", sc.alpha2},
                                                               {"alpha3", sc.alpha3}}) {
        if (!(v >= 0.0) || !(v <= 1.0)) {
            throw ScenarioError(std::string("scenario: ") + key + " must lie in [0, 1]");
        }
    }
    if (std::abs(sc.alpha1 + sc.alpha2 + sc.alpha3 - 1.0) > 1e-12) {
        throw ScenarioError("scenario: alpha1 + alpha2 + alpha3 must equal 1");
    }
    if (sc.alpha3 > 0.0 && !sc.levy) {
        throw ScenarioError("scenario: alpha3 > 0 needs a [timechange.levy] section");
    }
    if (sc.alpha1 > 0.0 && !sc.cir) {
        throw ScenarioError("scenario: alpha1 > 0 needs a [timechange.cir] section");
    }
    if (sc.alpha2 > 0.0 && !sc.oujump) {
        throw ScenarioError("scenario: alpha2 > 0 needs a [timechange.oujump] section");
    }
    sc.grid.validate();
    sc.quadrature.validate();
    sc.sim.validate();
    sc.firm();  // run the full model-level validation
    if (sc.portfolio) {
        sc.portfolio_spec();
    }
    return sc;
}

// ---------------------------------------------------------------------------
// Emission

namespace {

void emit_family(std::ostringstream& out, const std::string& section, const FamilyConfig& fam) {
    out << "[" << section << "]\n";
    out << "family = " << fam.family << "\n";
    if (fam.family == "ig") {
        out << "beta_tilde = " << format_double(fam.beta_tilde) << "\n";
        out << "gamma_tilde = " << format_double(fam.gamma_tilde) << "\n";
    } else {
        out << "a = " << format_double(fam.a) << "\n";
        out << "b = " << format_double(fam.b) << "\n";
        out << "c = " << format_double(fam.c) << "\n";
        if (fam.family == "cir" || fam.family == "oujump") {
            out << "lambda0 = " << format_double(fam.lambda0) << "\n";
        }
    }
    out << "\n";
}

}  // namespace

std::string emit_scenario(const Scenario& s) {
    std::ostringstream out;
    out << "[model]\nname = " << s.name << "\n\n";
    out << "[brownian]\n";
    out << "L0 = " << format_double(s.L0) << "\n";
    out << "sigma2 = " << format_double(s.sigma2) << "\n";
    out << "beta = " << format_double(s.beta) << "\n\n";
    out << "[timechange]\n";
    out << "alpha1 = " << format_double(s.alpha1) << "\n";
    out << "alpha2 = " << format_double(s.alpha2) << "\n";
    out << "alpha3 = " << format_double(s.alpha3) << "\n\n";
    if (s.levy) {
        emit_family(out, "timechange.levy", *s.levy);
    }
    if (s.cir) {
        emit_family(out, "timechange.cir", *s.cir);
    }
    if (s.oujump) {
        emit_family(out, "timechange.oujump", *s.oujump);
    }
    out << "[rates]\n";
    out << "a = " << format_double(s.rates.a) << "\n";
    out << "b = " << format_double(s.rates.b) << "\n";
    out << "c = " << format_double(s.rates.c) << "\n";
    out << "r0 = " << format_double(s.rates.r0) << "\n";
    out << "m1 = " << format_double(s.rates.m1) << "\n";
    out << "m2 = " << format_double(s.rates.m2) << "\n\n";
    out << "[recovery]\nR = " << format_double(s.recovery) << "\n\n";
    out << "[grid]\n";
    out << "start = " << format_double(s.grid.start) << "\n";
    out << "stop = " << format_double(s.grid.stop) << "\n";
    out << "count = " << s.grid.count << "\n";
    out << "spacing = " << (s.grid.log_spacing ? "log" : "linear") << "\n\n";
    out << "[quadrature]\n";
    out << "abs_tol = " << format_double(s.quadrature.abs_tol) << "\n";
    out << "max_panels = " << s.quadrature.max_panels << "\n";
    out << "acceleration_order = " << s.quadrature.acceleration_order << "\n\n";
    out << "[mc]\n";
    out << "seed = " << s.sim.seed << "\n";
    out << "paths = " << s.sim.n_paths << "\n";
    out << "dt = " << format_double(s.sim.dt) << "\n";
    out << "antithetic = " << (s.sim.antithetic ? "true" : "false") << "\n";
    if (s.portfolio) {
        out << "\n[portfolio]\n";
        out << "n_y = " << s.portfolio->n_y << "\n";
        out << "k_std = " << format_double(s.portfolio->k_std) << "\n";
        for (std::size_t i = 0; i < s.portfolio->firms.size(); ++i) {
            const auto& fc = s.portfolio->firms[i];
            out << "\n[portfolio.firm." << (i + 1) << "]\n";
            out << "L0 = " << format_double(fc.L0) << "\n";
            out << "sigma2 = " << format_double(fc.sigma2) << "\n";
            out << "beta = " << format_double(fc.beta) << "\n";
            out << "alpha = " << format_double(fc.alpha) << "\n";
            out << "weight = " << format_double(fc.weight) << "\n";
            out << "idio.family = " << fc.idio.family << "\n";
            if (fc.idio.family == "ig") {
                out << "idio.beta_tilde = " << format_double(fc.idio.beta_tilde) << "\n";
                out << "idio.gamma_tilde = " << format_double(fc.idio.gamma_tilde) << "\n";
            } else {
                out << "idio.a = " << format_double(fc.idio.a) << "\n";
                out << "idio.b = " << format_double(fc.idio.b) << "\n";
                out << "idio.c = " << format_double(fc.idio.c) << "\n";
                if (fc.idio.family == "cir" || fc.idio.family == "oujump") {
                    out << "idio.lambda0 = " << format_double(fc.idio.lambda0) << "\n";
                }
            }
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Builtins

namespace {

Scenario make_builtin(const std::string& name, double sigma2, const FamilyConfig& levy) {
    Scenario sc;
    sc.name = name;
    sc.L0 = 1.5;
    sc.sigma2 = sigma2;
    sc.beta = -0.5;
    sc.alpha1 = 0.0;
    sc.alpha2 = 0.0;
    sc.alpha3 = 1.0;
    sc.levy = levy;
    sc.sim.seed = 20090401;
    sc.sim.n_paths = 100000;
    return sc;
}

}  // namespace

std::vector<std::string> builtin_scenario_names() {
    return {"modelA", "modelB", "modelC", "modelD"};
}

bool is_builtin_scenario(std::string_view name) {
    const auto names = builtin_scenario_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

Scenario builtin_scenario(std::string_view name) {
    FamilyConfig fam;
    if (name == "modelA") {
        fam.family = "exponential";
        fam.a = 1.0;
        fam.b = 1.0;
        fam.c = 0.0;
        return make_builtin("modelA", 0.09, fam);
    }
    if (name == "modelB") {
        fam.family = "gamma";
        fam.a = 1.0;
        fam.b = 0.0;
        fam.c = 1.0;
        return make_builtin("modelB", 0.0846, fam);
    }
    if (name == "modelC") {
        fam.family = "gamma";
        fam.a = 10.0;
        fam.b = 0.0;
        fam.c = 10.0;
        return make_builtin("modelC", 0.0877, fam);
    }
    if (name == "modelD") {
        fam.family = "gamma";
        fam.a = 100.0;
        fam.b = 0.0;
        fam.c = 100.0;
        return make_builtin("modelD", 0.0880, fam);
    }
    throw ScenarioError("unknown builtin scenario '" + std::string(name) +
                        "'; available: modelA, modelB, modelC, modelD");
}

}  // namespace tcbm
