#pragma once

// Subcommand implementations. Each returns the process exit code:
//   0  success (inequality holds)
//   1  input error
//   2  inequality violated beyond tolerance

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "spec_io.hpp"

namespace sru::cli {

enum class Format { human, json, csv };

enum class Units { natural, si, electron };

inline constexpr int exit_ok = 0;
inline constexpr int exit_input = 1;
inline constexpr int exit_violated = 2;

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

struct CheckOptions {
    std::string state_file;
    std::string pair = "qp";
    Format format = Format::human;
    bool epsilon_zero = false;
};

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw spec_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <class Observable, class State>
ReportRecord analyse(const Observable& a, const Observable& b, const State& s,
                     bool epsilon_zero) {
    ReportRecord rec;
    rec.report = check_schrodinger(a, b, s);
    if (epsilon_zero) {
        try {
            rec.epsilon_zero = zeroing_epsilon(a, b, s);
        } catch (const error&) {
            rec.epsilon_zero.reset();
        }
    }
    return rec;
}

inline void print_human(std::ostream& out, const ReportRecord& rec, bool epsilon_requested) {
    const auto& r = rec.report;
    const auto& m = r.moments;
    out << "<A>            " << brief(m.mean_a) << "\n"
        << "<B>            " << brief(m.mean_b) << "\n"
        << "Var(A)         " << brief(m.var_a) << "\n"
        << "Var(B)         " << brief(m.var_b) << "\n"
        << "Cov(A,B)       " << brief(m.covariance) << "\n"
        << "<[A,B]>        " << brief(m.commutator_expectation.real()) << " + "
        << brief(m.commutator_expectation.imag()) << "i\n"
        << "lhs            " << brief(r.lhs) << "   Var(A) Var(B)\n"
        << "cov_sq         " << brief(r.cov_sq) << "\n"
        << "comm_sq        " << brief(r.comm_sq) << "   |<[A,B]>/2|^2\n"
        << "rhs            " << brief(r.schrodinger_rhs) << "   (robertson " << brief(r.robertson_rhs)
        << ")\n"
        << "slack          " << brief(r.slack) << "   (tolerance " << brief(r.tolerance) << ")\n"
        << "det sigma      " << brief(r.det_form) << "\n"
        << "classification " << to_string(r.classification) << "\n"
        << "holds          " << (r.holds() ? "yes" : "NO") << "\n";
    if (epsilon_requested)
        out << "epsilon_zero   "
            << (rec.epsilon_zero ? brief(*rec.epsilon_zero) : std::string("undefined (Var(A) = 0)"))
            << "\n";
}

} // namespace detail

inline int cmd_check(const CheckOptions& opt, std::ostream& out, std::ostream& err) {
    ReportRecord rec;
    try {
        const StateSpec spec = parse_state_spec(std::string_view(detail::read_file(opt.state_file)));
        const AnyState state = build_state(spec);
        if (opt.pair == "qp") {
            const auto* s = std::get_if<GridState>(&state);
            if (!s)
                throw spec_error("pair 'qp' needs a grid state");
            rec = detail::analyse(GridObservable::position(), GridObservable::momentum(), *s,
                                  opt.epsilon_zero);
        } else if (opt.pair == "spin:xy" || opt.pair == "spin:yz" || opt.pair == "spin:zx") {
            const auto* s = std::get_if<FiniteState>(&state);
            if (!s || s->dim() != 2)
                throw spec_error("pair '" + opt.pair + "' needs a 2-dimensional finite state");
            const auto spin = spin_triple();
            const FiniteOperator* a = &spin.x;
            const FiniteOperator* b = &spin.y;
            if (opt.pair == "spin:yz") {
                a = &spin.y;
                b = &spin.z;
            } else if (opt.pair == "spin:zx") {
                a = &spin.z;
                b = &spin.x;
            }
            rec = detail::analyse(*a, *b, *s, opt.epsilon_zero);
        } else {
            throw spec_error("unknown observable pair '" + opt.pair +
                             "' (expected qp, spin:xy, spin:yz or spin:zx)");
        }
        rec.inputs = {{"state_file", opt.state_file}, {"pair", opt.pair}, {"state", spec.source}};
    } catch (const error& e) {
        err << "error: " << opt.state_file << ": " << e.what() << "\n";
        return exit_input;
    }

    switch (opt.format) {
    case Format::json: out << to_json(rec).dump(2) << "\n"; break;
    case Format::csv: out << csv_header() << "\n" << csv_row(rec) << "\n"; break;
    case Format::human: detail::print_human(out, rec, opt.epsilon_zero); break;
    }
    if (!rec.report.holds()) {
        err << "inequality violated: slack " << exact(rec.report.slack) << " below -"
            << exact(rec.report.tolerance) << "\n";
        return exit_violated;
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// spread
// ---------------------------------------------------------------------------

struct SpreadOptions {
    std::optional<Units> units;
    std::optional<double> mass;
    double hbar = 1.0; ///< natural units only
    std::vector<double> times;
    std::optional<std::vector<double>> t_range; ///< start, stop, count
    std::optional<double> var_q0;
    std::optional<double> var_p0;
    double cov0 = 0.0;
    bool optimal = false;
};

namespace detail {

struct UnitSystem {
    double hbar;
    double mass;
};

inline UnitSystem resolve_units(std::optional<Units> units, std::optional<double> mass,
                                double natural_hbar) {
    if (!units)
        throw spec_error("choose a unit system: --natural, --si or --electron");
    switch (*units) {
    case Units::natural:
        if (!mass)
            throw spec_error("--mass is required");
        return {natural_hbar, *mass};
    case Units::si:
        if (!mass)
            throw spec_error("--mass is required");
        return {si::hbar, *mass};
    case Units::electron:
        return {si::hbar, mass.value_or(si::electron_mass)};
    }
    throw spec_error("unknown unit system");
}

inline std::vector<double> time_points(const SpreadOptions& opt) {
    std::vector<double> ts = opt.times;
    if (opt.t_range) {
        const auto& r = *opt.t_range;
        if (r.size() != 3 || r[2] < 1.0 || r[2] != std::floor(r[2]))
            throw spec_error("--t-range expects START STOP COUNT with integer COUNT >= 1");
        const auto count = static_cast<std::size_t>(r[2]);
        for (std::size_t i = 0; i < count; ++i)
            ts.push_back(count == 1 ? r[0]
                                    : r[0] + (r[1] - r[0]) * static_cast<double>(i) /
                                                 static_cast<double>(count - 1));
    }
    if (ts.empty())
        throw spec_error("give at least one time with --t or --t-range");
    for (double t : ts)
        if (!(t >= 0.0))
            throw spec_error("times must be nonnegative");
    return ts;
}

} // namespace detail

inline int cmd_spread(const SpreadOptions& opt, std::ostream& out, std::ostream& err) {
    std::ostringstream table;
    try {
        const auto units = detail::resolve_units(opt.units, opt.mass, opt.hbar);
        const auto ts = detail::time_points(opt);
        std::optional<SpreadingProblem> problem;
        if (opt.var_q0 || opt.var_p0) {
            if (!opt.var_q0 || !opt.var_p0)
                throw spec_error("--var-q0 and --var-p0 must be given together");
            problem.emplace(*opt.var_q0, *opt.var_p0, opt.cov0, units.mass, units.hbar);
        } else if (!opt.optimal) {
            throw spec_error("give --var-q0/--var-p0 or --optimal");
        }

        table << "t,var_q,dq";
        if (opt.optimal)
            table << ",var_q0_opt,dq_min";
        table << "\n";
        for (double t : ts) {
            std::optional<OptimalSpread> best;
            if (opt.optimal)
                best = optimal_initial_spread(t, units.mass, units.hbar);
            const double var_q = problem ? spread_variance(*problem, t) : best->var_q_final;
            table << exact(t) << "," << exact(var_q) << "," << exact(std::sqrt(var_q));
            if (best)
                table << "," << exact(best->var_q0_opt) << ","
                      << exact(min_spread(t, units.mass, units.hbar));
            table << "\n";
        }
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }
    out << table.str();
    return exit_ok;
}

// ---------------------------------------------------------------------------
// relativistic
// ---------------------------------------------------------------------------

struct RelativisticOptions {
    std::optional<Units> units;
    double beta = 0.0;
    std::optional<double> rest_mass;
    double hbar = 1.0;
    double t = 0.0;
    Format format = Format::human;
};

inline int cmd_relativistic(const RelativisticOptions& opt, std::ostream& out,
                            std::ostream& err) {
    try {
        const auto units = detail::resolve_units(opt.units, opt.rest_mass, opt.hbar);
        const RelativisticSetting setting(opt.beta, units.mass, units.hbar);
        const double moving_form = relativistic_spread(setting, opt.t);
        const double rest_form = relativistic_spread_rest_form(setting, opt.t);
        if (opt.format == Format::json) {
            const json doc{{"tool", tool_name},
                           {"version", tool_version},
                           {"beta", setting.beta()},
                           {"rest_mass", setting.rest_mass()},
                           {"moving_mass", setting.moving_mass()},
                           {"hbar", setting.hbar()},
                           {"observer_time", opt.t},
                           {"rest_time", setting.rest_time(opt.t)},
                           {"dq_moving_mass_form", moving_form},
                           {"dq_rest_mass_form", rest_form}};
            out << doc.dump(2) << "\n";
        } else if (opt.format == Format::csv) {
            out << "beta,rest_mass,moving_mass,hbar,observer_time,rest_time,dq_moving_mass_form,"
                   "dq_rest_mass_form\n"
                << exact(setting.beta()) << "," << exact(setting.rest_mass()) << ","
                << exact(setting.moving_mass()) << "," << exact(setting.hbar()) << ","
                << exact(opt.t) << "," << exact(setting.rest_time(opt.t)) << ","
                << exact(moving_form) << "," << exact(rest_form) << "\n";
        } else {
            out << "beta           " << brief(setting.beta()) << "\n"
                << "rest mass      " << brief(setting.rest_mass()) << "\n"
                << "moving mass    " << brief(setting.moving_mass()) << "\n"
                << "observer time  " << brief(opt.t) << "\n"
                << "rest time      " << brief(setting.rest_time(opt.t)) << "\n"
                << "dq = sqrt(1-beta^2) sqrt(hbar t / m)        " << brief(moving_form) << "\n"
                << "dq = (1-beta^2)^(3/4) sqrt(hbar t / m_r)    " << brief(rest_form) << "\n";
        }
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepOptions {
    std::uint64_t seed = 1;
    std::uint64_t trials = 10000;
    std::vector<Eigen::Index> dims{2, 4, 8, 16};
    Format format = Format::human;
};

inline int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
    SweepSummary s;
    try {
        for (auto d : opt.dims)
            if (d < 2)
                throw spec_error("dimensions must be at least 2");
        s = run_sweep(opt.seed, opt.trials, opt.dims);
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }
    std::string dims;
    for (auto d : opt.dims)
        dims += (dims.empty() ? "" : ",") + std::to_string(d);

    if (opt.format == Format::json) {
        const json doc{{"tool", tool_name},          {"version", tool_version},
                       {"seed", opt.seed},           {"trials", s.trials},
                       {"dims", opt.dims},           {"min_slack", s.min_slack},
                       {"saturating", s.saturating}, {"nonzero_covariance", s.nonzero_covariance},
                       {"strictly_stronger", s.strictly_stronger},
                       {"violations", s.violations}};
        out << doc.dump(2) << "\n";
    } else if (opt.format == Format::csv) {
        out << "seed,trials,dims,min_slack,saturating,nonzero_covariance,strictly_stronger,"
               "violations\n"
            << opt.seed << "," << s.trials << ",\"" << dims << "\"," << exact(s.min_slack) << ","
            << s.saturating << "," << s.nonzero_covariance << "," << s.strictly_stronger << ","
            << s.violations << "\n";
    } else {
        out << "seed=" << opt.seed << " trials=" << s.trials << " dims=" << dims
            << " min_slack=" << brief(s.min_slack) << " saturating=" << s.saturating
            << " nonzero_cov=" << s.nonzero_covariance
            << " strictly_stronger=" << s.strictly_stronger << " violations=" << s.violations
            << (s.passed() ? " PASS" : " FAIL") << "\n";
    }
    return s.passed() ? exit_ok : exit_violated;
}

} // namespace sru::cli
