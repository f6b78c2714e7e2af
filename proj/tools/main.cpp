#include <iostream>

#include "CLI11.hpp"

#include "commands.hpp"

namespace {

using namespace sru::cli;

struct UnitFlags {
    bool natural = false;
    bool si = false;
    bool electron = false;

    void attach(CLI::App* cmd) {
        auto* n = cmd->add_flag("--natural", natural, "natural units (hbar from --hbar, default 1)");
        auto* s = cmd->add_flag("--si", si, "SI units with the pinned Planck constant");
        auto* e = cmd->add_flag("--electron", electron, "SI units, electron mass unless --mass");
        n->excludes(s)->excludes(e);
        s->excludes(e);
    }

    std::optional<Units> get() const {
        if (natural)
            return Units::natural;
        if (si)
            return Units::si;
        if (electron)
            return Units::electron;
        return std::nullopt;
    }
};

struct FormatFlags {
    bool json = false;
    bool csv = false;

    void attach(CLI::App* cmd) {
        auto* j = cmd->add_flag("--json", json, "machine-readable JSON output");
        auto* c = cmd->add_flag("--csv", csv, "machine-readable CSV output");
        j->excludes(c);
    }

    Format get() const { return json ? Format::json : csv ? Format::csv : Format::human; }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moments, uncertainty relations and free-particle spreading"};
    app.set_version_flag("--version", std::string(tool_version));
    app.require_subcommand(1);

    CheckOptions check;
    FormatFlags check_format;
    auto* check_cmd = app.add_subcommand("check", "verify the uncertainty inequality on a state file");
    check_cmd->add_option("state_file", check.state_file, "JSON state spec")->required();
    check_cmd->add_option("--pair", check.pair, "qp | spin:xy | spin:yz | spin:zx")
        ->capture_default_str();
    check_cmd->add_flag("--epsilon-zero", check.epsilon_zero,
                        "also report the shift B -> B + eps A that zeroes the covariance");
    check_format.attach(check_cmd);

    SpreadOptions spread;
    UnitFlags spread_units;
    std::optional<double> spread_mass;
    auto* spread_cmd = app.add_subcommand("spread", "free-particle position spread versus time");
    spread_units.attach(spread_cmd);
    spread_cmd->add_option("--mass", spread_mass, "particle mass");
    spread_cmd->add_option("--hbar", spread.hbar, "reduced Planck constant (natural units)")
        ->capture_default_str();
    spread_cmd->add_option("--t", spread.times, "time points")->delimiter(',');
    std::vector<double> t_range;
    auto* range_opt = spread_cmd->add_option("--t-range", t_range, "START STOP COUNT")
                          ->expected(3);
    std::optional<double> var_q0, var_p0;
    spread_cmd->add_option("--var-q0", var_q0, "initial position variance");
    spread_cmd->add_option("--var-p0", var_p0, "initial momentum variance");
    spread_cmd->add_option("--cov0", spread.cov0, "initial position-momentum covariance");
    spread_cmd->add_flag("--optimal", spread.optimal,
                         "add the optimal initial variance and the minimum spread");

    RelativisticOptions rel;
    UnitFlags rel_units;
    FormatFlags rel_format;
    std::optional<double> rest_mass;
    auto* rel_cmd = app.add_subcommand("relativistic", "minimum spread seen from a moving frame");
    rel_units.attach(rel_cmd);
    rel_format.attach(rel_cmd);
    rel_cmd->add_option("--beta", rel.beta, "velocity over light speed, in [0, 1)")->required();
    rel_cmd->add_option("--rest-mass", rest_mass, "rest mass");
    rel_cmd->add_option("--hbar", rel.hbar, "reduced Planck constant (natural units)")
        ->capture_default_str();
    rel_cmd->add_option("--t", rel.t, "observer time")->required();

    SweepOptions sweep;
    FormatFlags sweep_format;
    auto* sweep_cmd = app.add_subcommand("sweep", "audit the inequality on seeded random instances");
    sweep_cmd->add_option("--seed", sweep.seed)->capture_default_str();
    sweep_cmd->add_option("--trials", sweep.trials)->capture_default_str();
    sweep_cmd->add_option("--dims", sweep.dims, "comma-separated dimensions")
        ->delimiter(',')
        ->capture_default_str();
    sweep_format.attach(sweep_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    }

    if (*check_cmd) {
        check.format = check_format.get();
        return cmd_check(check, std::cout, std::cerr);
    }
    if (*spread_cmd) {
        spread.units = spread_units.get();
        spread.mass = spread_mass;
        spread.var_q0 = var_q0;
        spread.var_p0 = var_p0;
        if (range_opt->count() > 0)
            spread.t_range = t_range;
        return cmd_spread(spread, std::cout, std::cerr);
    }
    if (*rel_cmd) {
        rel.units = rel_units.get();
        rel.rest_mass = rest_mass;
        rel.format = rel_format.get();
        return cmd_relativistic(rel, std::cout, std::cerr);
    }
    if (*sweep_cmd) {
        sweep.format = sweep_format.get();
        return cmd_sweep(sweep, std::cout, std::cerr);
    }
    return exit_input;
}
