#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"

using namespace sru;
using namespace sru::cli;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("sru_test_" + name);
    std::ofstream(path) << content;
    return path;
}

const char* chirped_spec = R"({
  "schema_version": 1, "backend": "grid",
  "x_min": -20, "x_max": 20, "n": 1024, "hbar": 1,
  "family": "gaussian", "sigma": 1, "center": 0, "mean_momentum": 0, "chirp": 1
})";

const char* spin_up_spec =
    R"({"schema_version": 1, "backend": "finite", "amplitudes": [[1, 0], [0, 0]]})";

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run check(const CheckOptions& opt) {
    std::ostringstream out, err;
    const int code = cmd_check(opt, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("state spec parsing", "[cli]") {
    const auto spec = parse_state_spec(std::string_view(chirped_spec));
    const auto& g = std::get<GridSpec>(spec.body);
    CHECK(g.n == 1024);
    CHECK(g.chirp == 1.0);
    CHECK(std::holds_alternative<GridState>(build_state(spec)));

    const auto fin = parse_state_spec(std::string_view(spin_up_spec));
    CHECK(std::get<FiniteSpec>(fin.body).amplitudes.size() == 2);

    CHECK_THROWS_WITH(parse_state_spec(std::string_view(R"({"schema_version": 1, "backend": "finite",
        "amplitudes": [[1,0],[0,0]], "colour": "red"})")),
                      Catch::Matchers::ContainsSubstring("unknown field 'colour'"));
    CHECK_THROWS_WITH(parse_state_spec(std::string_view(R"({"schema_version": 2, "backend": "finite"})")),
                      Catch::Matchers::ContainsSubstring("schema_version"));
    CHECK_THROWS_WITH(parse_state_spec(std::string_view("{\n\"backend\": \n")),
                      Catch::Matchers::ContainsSubstring("line"));
    CHECK_THROWS_WITH(parse_state_spec(std::string_view(R"({"schema_version": 1, "backend": "finite",
        "amplitudes": [[1,0],[0]]})")),
                      Catch::Matchers::ContainsSubstring("amplitudes[1]"));
    CHECK_THROWS_WITH(parse_state_spec(std::string_view(R"({"schema_version": 1, "backend": "grid",
        "x_min": -5, "x_max": 5, "n": 64, "hbar": 1, "family": "gaussian", "r": []})")),
                      Catch::Matchers::ContainsSubstring("unknown field 'r'"));
    CHECK_THROWS_WITH(parse_state_spec(std::string_view(R"({"schema_version": 1, "backend": "grid",
        "x_min": -5, "x_max": 5, "n": 64, "hbar": "one", "family": "gaussian"})")),
                      Catch::Matchers::ContainsSubstring("'hbar'"));
}

TEST_CASE("samples and modulus_phase specs", "[cli]") {
    const Grid grid(-10.0, 10.0, 64);
    json samples = json::array();
    json r = json::array();
    json phi = json::array();
    for (std::size_t k = 0; k < grid.n(); ++k) {
        const double x = grid.x(k);
        const complex z = std::exp(complex(-x * x / 2.0, x * x / 4.0));
        samples.push_back({z.real(), z.imag()});
        r.push_back(std::exp(-x * x / 2.0));
        phi.push_back(x * x / 4.0);
    }
    json doc{{"schema_version", 1}, {"backend", "grid"}, {"x_min", -10}, {"x_max", 10},
             {"n", 64},             {"hbar", 1},         {"family", "samples"},
             {"samples", samples}};
    const auto a = std::get<GridState>(build_state(parse_state_document(doc)));
    doc.erase("samples");
    doc["family"] = "modulus_phase";
    doc["r"] = r;
    doc["phi"] = phi;
    const auto b = std::get<GridState>(build_state(parse_state_document(doc)));
    CHECK((a.values() - b.values()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("report JSON round-trips losslessly", "[cli][property]") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = random_state(3, rng);
        const auto a = random_hermitian(3, rng);
        const auto b = random_hermitian(3, rng);
        ReportRecord rec;
        rec.inputs = {{"trial", trial}};
        rec.report = check_schrodinger(a, b, s);
        if (trial % 2)
            rec.epsilon_zero = zeroing_epsilon(a, b, s);
        const auto text = to_json(rec).dump();
        const auto back = report_from_json(json::parse(text));
        CHECK(to_json(back) == to_json(rec));
        CHECK(back.report.slack == rec.report.slack);
        CHECK(back.report.moments.commutator_expectation == rec.report.moments.commutator_expectation);
        CHECK(back.epsilon_zero == rec.epsilon_zero);
    }
}

TEST_CASE("cmd_check", "[cli]") {
    const auto chirped = write_temp("chirped.json", chirped_spec);
    const auto up = write_temp("up.json", spin_up_spec);
    const auto broken = write_temp("broken.json", "{ \"schema_version\": 1, ");

    SECTION("chirped Gaussian, qp") {
        const auto r = check({chirped.string(), "qp", Format::human, true});
        CHECK(r.code == exit_ok);
        CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("schrodinger-saturating"));
        CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("epsilon_zero   -0.5"));
    }
    SECTION("json output") {
        const auto r = check({chirped.string(), "qp", Format::json, true});
        REQUIRE(r.code == exit_ok);
        const auto doc = json::parse(r.out);
        CHECK(doc["report"]["classification"] == "schrodinger-saturating");
        CHECK(std::abs(doc["report"]["slack"].get<double>()) <= 1e-6);
        CHECK(std::abs(doc["epsilon_zero"].get<double>() + 0.5) <= 1e-6);
        CHECK(doc["inputs"]["pair"] == "qp");
        CHECK(doc["inputs"]["state"]["chirp"] == 1);
        CHECK(doc["tool"] == tool_name);
    }
    SECTION("csv output") {
        const auto r = check({up.string(), "spin:xy", Format::csv, false});
        REQUIRE(r.code == exit_ok);
        std::istringstream lines(r.out);
        std::string header, row;
        std::getline(lines, header);
        std::getline(lines, row);
        CHECK(header == csv_header());
        CHECK_THAT(row, Catch::Matchers::StartsWith("0,0,1,1,0,0,2,1,0,1,1,1,0,1,"));
        CHECK_THAT(row, Catch::Matchers::ContainsSubstring("robertson-saturating,true,"));
    }
    SECTION("spin pairs") {
        const auto r = check({up.string(), "spin:xy", Format::human, false});
        CHECK(r.code == exit_ok);
        CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("lhs            1 "));
        CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("rhs            1 "));
        CHECK(check({up.string(), "spin:yz", Format::human, true}).code == exit_ok);
        CHECK(check({up.string(), "spin:zx", Format::human, true}).code == exit_ok);
    }
    SECTION("input errors") {
        CHECK(check({broken.string(), "qp", Format::human, false}).code == exit_input);
        CHECK(check({"/nonexistent/file.json", "qp", Format::human, false}).code == exit_input);
        CHECK(check({up.string(), "qp", Format::human, false}).code == exit_input);
        CHECK(check({chirped.string(), "spin:xy", Format::human, false}).code == exit_input);
        CHECK(check({chirped.string(), "xyz", Format::human, false}).code == exit_input);
        const auto r = check({broken.string(), "qp", Format::human, false});
        CHECK_THAT(r.err, Catch::Matchers::ContainsSubstring("line"));
    }
}

TEST_CASE("cmd_spread", "[cli]") {
    auto run = [](const SpreadOptions& opt) {
        std::ostringstream out, err;
        const int code = cmd_spread(opt, out, err);
        return Run{code, out.str(), err.str()};
    };

    SpreadOptions natural;
    natural.units = Units::natural;
    natural.mass = 1.0;
    natural.times = {1.0};
    natural.optimal = true;
    auto r = run(natural);
    REQUIRE(r.code == exit_ok);
    CHECK(r.out == "t,var_q,dq,var_q0_opt,dq_min\n1,1,1,0.5,1\n");

    SpreadOptions electron;
    electron.units = Units::electron;
    electron.times = {1.0};
    electron.optimal = true;
    r = run(electron);
    REQUIRE(r.code == exit_ok);
    const auto last_comma = r.out.rfind(',');
    const double dq_min = std::stod(r.out.substr(last_comma + 1));
    CHECK(std::abs(dq_min - 1.076e-2) <= 2e-4);

    SpreadOptions given;
    given.units = Units::natural;
    given.mass = 1.0;
    given.t_range = std::vector<double>{0.0, 2.0, 3};
    given.var_q0 = 1.0;
    given.var_p0 = 0.5;
    given.cov0 = -0.5;
    r = run(given);
    REQUIRE(r.code == exit_ok);
    CHECK(r.out == "t,var_q,dq\n0,1,1\n1,0.5,0.70710678118654757\n2,1,1\n");

    SpreadOptions missing = given;
    missing.units.reset();
    CHECK(run(missing).code == exit_input);
    missing = given;
    missing.mass.reset();
    CHECK(run(missing).code == exit_input);
    missing = given;
    missing.var_p0.reset();
    CHECK(run(missing).code == exit_input);
    missing = given;
    missing.var_q0.reset();
    missing.var_p0.reset();
    CHECK(run(missing).code == exit_input);
    missing = natural;
    missing.times = {0.0};
    CHECK(run(missing).code == exit_input);
    missing = natural;
    missing.times.clear();
    CHECK(run(missing).code == exit_input);
}

TEST_CASE("cmd_relativistic", "[cli]") {
    RelativisticOptions opt;
    opt.units = Units::natural;
    opt.beta = 0.6;
    opt.rest_mass = 1.0;
    opt.t = 1.0;
    opt.format = Format::json;
    std::ostringstream out, err;
    REQUIRE(cmd_relativistic(opt, out, err) == exit_ok);
    const auto doc = json::parse(out.str());
    CHECK(std::abs(doc["dq_moving_mass_form"].get<double>() - 0.7155417527999327) <= 1e-12);
    CHECK(std::abs(doc["dq_rest_mass_form"].get<double>() - 0.7155417527999327) <= 1e-12);

    opt.format = Format::human;
    std::ostringstream human;
    REQUIRE(cmd_relativistic(opt, human, err) == exit_ok);
    CHECK_THAT(human.str(), Catch::Matchers::ContainsSubstring("0.715542"));

    opt.beta = 1.0;
    std::ostringstream sink;
    CHECK(cmd_relativistic(opt, sink, err) == exit_input);
}

TEST_CASE("cmd_sweep", "[cli]") {
    SweepOptions opt;
    opt.seed = 2024;
    opt.trials = 1;
    std::ostringstream one, err;
    REQUIRE(cmd_sweep(opt, one, err) == exit_ok);
    const std::string line = one.str();
    CHECK(std::count(line.begin(), line.end(), '\n') == 1);

    opt.trials = 500;
    std::ostringstream a, b;
    REQUIRE(cmd_sweep(opt, a, err) == exit_ok);
    REQUIRE(cmd_sweep(opt, b, err) == exit_ok);
    CHECK(a.str() == b.str());

    opt.dims = {1};
    std::ostringstream sink;
    CHECK(cmd_sweep(opt, sink, err) == exit_input);
}
