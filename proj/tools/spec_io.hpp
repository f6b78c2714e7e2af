#pragma once

// File formats used by the command-line tool: the JSON state spec that
// describes a state to analyse, and the JSON/CSV report records it emits.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "sru/sru.hpp"

namespace sru::cli {

using json = nlohmann::json;

inline constexpr const char* tool_name = "sru";
inline constexpr const char* tool_version = "0.1.0";
inline constexpr int schema_version = 1;

/// Input problem: diagnostics name the offending field.
class spec_error : public error {
public:
    using error::error;
};

struct FiniteSpec {
    std::vector<complex> amplitudes;
};

struct GridSpec {
    double x_min = 0.0;
    double x_max = 0.0;
    std::size_t n = 0;
    double hbar = 1.0;
    std::string family;
    // gaussian
    double sigma = 1.0;
    double center = 0.0;
    double mean_momentum = 0.0;
    double chirp = 0.0;
    // modulus_phase
    std::vector<double> r;
    std::vector<double> phi;
    // samples
    std::vector<complex> samples;
};

struct StateSpec {
    std::variant<FiniteSpec, GridSpec> body;
    json source; ///< the parsed document, echoed into reports
};

using AnyState = std::variant<FiniteState, GridState>;

namespace detail {

inline void reject_unknown(const json& doc, const std::set<std::string>& allowed,
                           std::string_view where) {
    for (const auto& [key, _] : doc.items())
        if (!allowed.contains(key))
            throw spec_error("unknown field '" + key + "' in " + std::string(where));
}

inline const json& require(const json& doc, const char* field) {
    if (!doc.contains(field))
        throw spec_error(std::string("missing required field '") + field + "'");
    return doc.at(field);
}

inline double number(const json& v, std::string_view field) {
    if (!v.is_number())
        throw spec_error("field '" + std::string(field) + "': expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x))
        throw spec_error("field '" + std::string(field) + "': must be finite");
    return x;
}

inline double number_or(const json& doc, const char* field, double fallback) {
    return doc.contains(field) ? number(doc.at(field), field) : fallback;
}

inline std::vector<double> real_array(const json& v, std::string_view field) {
    if (!v.is_array())
        throw spec_error("field '" + std::string(field) + "': expected an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(number(v[i], std::string(field) + "[" + std::to_string(i) + "]"));
    return out;
}

inline std::vector<complex> complex_array(const json& v, std::string_view field) {
    if (!v.is_array())
        throw spec_error("field '" + std::string(field) + "': expected an array of [re, im] pairs");
    std::vector<complex> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string name = std::string(field) + "[" + std::to_string(i) + "]";
        if (!v[i].is_array() || v[i].size() != 2)
            throw spec_error("field '" + name + "': expected a [re, im] pair");
        out.emplace_back(number(v[i][0], name + "[0]"), number(v[i][1], name + "[1]"));
    }
    return out;
}

} // namespace detail

inline StateSpec parse_state_document(const json& doc) {
    using namespace detail;
    if (!doc.is_object())
        throw spec_error("state spec must be a JSON object");
    const json& version = require(doc, "schema_version");
    if (!version.is_number_integer() || version.get<int>() != schema_version)
        throw spec_error("field 'schema_version': expected 1");
    const json& backend = require(doc, "backend");
    if (!backend.is_string())
        throw spec_error("field 'backend': expected \"finite\" or \"grid\"");

    StateSpec spec;
    spec.source = doc;
    if (backend == "finite") {
        reject_unknown(doc, {"schema_version", "backend", "amplitudes"}, "finite state spec");
        spec.body = FiniteSpec{complex_array(require(doc, "amplitudes"), "amplitudes")};
        return spec;
    }
    if (backend != "grid")
        throw spec_error("field 'backend': expected \"finite\" or \"grid\"");

    GridSpec g;
    const json& family = require(doc, "family");
    if (!family.is_string())
        throw spec_error("field 'family': expected a string");
    g.family = family.get<std::string>();

    std::set<std::string> allowed{"schema_version", "backend", "x_min", "x_max",
                                  "n",              "hbar",    "family"};
    if (g.family == "gaussian")
        allowed.insert({"sigma", "center", "mean_momentum", "chirp"});
    else if (g.family == "modulus_phase")
        allowed.insert({"r", "phi"});
    else if (g.family == "samples")
        allowed.insert("samples");
    else
        throw spec_error("field 'family': expected \"gaussian\", \"modulus_phase\" or \"samples\"");
    reject_unknown(doc, allowed, "grid state spec");

    g.x_min = number(require(doc, "x_min"), "x_min");
    g.x_max = number(require(doc, "x_max"), "x_max");
    const json& n = require(doc, "n");
    if (!n.is_number_integer() || n.get<std::int64_t>() <= 0)
        throw spec_error("field 'n': expected a positive integer");
    g.n = static_cast<std::size_t>(n.get<std::int64_t>());
    g.hbar = number(require(doc, "hbar"), "hbar");

    if (g.family == "gaussian") {
        g.sigma = number_or(doc, "sigma", 1.0);
        g.center = number_or(doc, "center", 0.0);
        g.mean_momentum = number_or(doc, "mean_momentum", 0.0);
        g.chirp = number_or(doc, "chirp", 0.0);
    } else if (g.family == "modulus_phase") {
        g.r = real_array(require(doc, "r"), "r");
        g.phi = real_array(require(doc, "phi"), "phi");
    } else {
        g.samples = complex_array(require(doc, "samples"), "samples");
    }
    spec.body = std::move(g);
    return spec;
}

/// Parses spec text. JSON syntax errors carry nlohmann's line/column report.
inline StateSpec parse_state_spec(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw spec_error(std::string("malformed JSON: ") + e.what());
    }
    return parse_state_document(doc);
}

inline AnyState build_state(const StateSpec& spec) {
    if (const auto* f = std::get_if<FiniteSpec>(&spec.body))
        return make_state(std::span<const complex>(f->amplitudes));
    const auto& g = std::get<GridSpec>(spec.body);
    const Grid grid(g.x_min, g.x_max, g.n);
    if (g.family == "gaussian")
        return gaussian(grid, g.hbar, g.center, g.mean_momentum, g.sigma, g.chirp);
    if (g.family == "modulus_phase")
        return modulus_phase(grid, g.hbar, g.r, g.phi);
    cvector samples(static_cast<Eigen::Index>(g.samples.size()));
    for (std::size_t k = 0; k < g.samples.size(); ++k)
        samples(static_cast<Eigen::Index>(k)) = g.samples[k];
    return from_samples(grid, std::move(samples), g.hbar);
}

// ---------------------------------------------------------------------------
// report records
// ---------------------------------------------------------------------------

struct ReportRecord {
    std::string tool = tool_name;
    std::string version = tool_version;
    json inputs;
    UncertaintyReport report;
    std::optional<double> epsilon_zero;
};

inline json to_json(const ReportRecord& rec) {
    const auto& r = rec.report;
    const auto& m = r.moments;
    json out{
        {"tool", rec.tool},
        {"version", rec.version},
        {"inputs", rec.inputs},
        {"report",
         {{"mean_a", m.mean_a},
          {"mean_b", m.mean_b},
          {"var_a", m.var_a},
          {"var_b", m.var_b},
          {"covariance", m.covariance},
          {"commutator_expectation", {m.commutator_expectation.real(),
                                      m.commutator_expectation.imag()}},
          {"lhs", r.lhs},
          {"cov_sq", r.cov_sq},
          {"comm_sq", r.comm_sq},
          {"schrodinger_rhs", r.schrodinger_rhs},
          {"robertson_rhs", r.robertson_rhs},
          {"slack", r.slack},
          {"det_form", r.det_form},
          {"tolerance", r.tolerance},
          {"classification", std::string(to_string(r.classification))},
          {"holds", r.holds()}}},
    };
    out["epsilon_zero"] = rec.epsilon_zero ? json(*rec.epsilon_zero) : json(nullptr);
    return out;
}

inline ReportRecord report_from_json(const json& doc) {
    ReportRecord rec;
    rec.tool = doc.at("tool").get<std::string>();
    rec.version = doc.at("version").get<std::string>();
    rec.inputs = doc.at("inputs");
    const json& j = doc.at("report");
    auto& r = rec.report;
    auto& m = r.moments;
    m.mean_a = j.at("mean_a").get<double>();
    m.mean_b = j.at("mean_b").get<double>();
    m.var_a = j.at("var_a").get<double>();
    m.var_b = j.at("var_b").get<double>();
    m.covariance = j.at("covariance").get<double>();
    m.commutator_expectation = {j.at("commutator_expectation").at(0).get<double>(),
                                j.at("commutator_expectation").at(1).get<double>()};
    r.lhs = j.at("lhs").get<double>();
    r.cov_sq = j.at("cov_sq").get<double>();
    r.comm_sq = j.at("comm_sq").get<double>();
    r.schrodinger_rhs = j.at("schrodinger_rhs").get<double>();
    r.robertson_rhs = j.at("robertson_rhs").get<double>();
    r.slack = j.at("slack").get<double>();
    r.det_form = j.at("det_form").get<double>();
    r.tolerance = j.at("tolerance").get<double>();
    const auto cls = parse_classification(j.at("classification").get<std::string>());
    if (!cls)
        throw spec_error("report: unknown classification");
    r.classification = *cls;
    if (!doc.at("epsilon_zero").is_null())
        rec.epsilon_zero = doc.at("epsilon_zero").get<double>();
    return rec;
}

/// %.17g, lossless for doubles.
inline std::string exact(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// %.6g for human-readable output.
inline std::string brief(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

inline std::string csv_header() {
    return "mean_a,mean_b,var_a,var_b,covariance,commutator_re,commutator_im,lhs,cov_sq,"
           "comm_sq,schrodinger_rhs,robertson_rhs,slack,det_form,tolerance,classification,"
           "holds,epsilon_zero";
}

inline std::string csv_row(const ReportRecord& rec) {
    const auto& r = rec.report;
    const auto& m = r.moments;
    std::string row;
    for (double v : {m.mean_a, m.mean_b, m.var_a, m.var_b, m.covariance,
                     m.commutator_expectation.real(), m.commutator_expectation.imag(), r.lhs,
                     r.cov_sq, r.comm_sq, r.schrodinger_rhs, r.robertson_rhs, r.slack,
                     r.det_form, r.tolerance})
        row += exact(v) + ",";
    row += std::string(to_string(r.classification)) + ",";
    row += r.holds() ? "true," : "false,";
    row += rec.epsilon_zero ? exact(*rec.epsilon_zero) : "";
    return row;
}

} // namespace sru::cli
