#include <doctest.h>

#include <fstream>
#include <sstream>

#include "cgmldp/errors.hpp"
#include "cli.hpp"

using namespace cgmldp;
using namespace cgmldp::cli;

TEST_SUITE("cli") {

TEST_CASE("law spec parsing") {
    CHECK(parse_law_text(R"({"type":"delta","x":0.5})", "alpha").kind() == LawKind::PointMass);
    const ParameterLaw two =
        parse_law_text(R"({"type":"discrete","atoms":[[1.0,0.5],[2.0,0.5]]})", "alpha");
    CHECK(two.atoms().size() == 2);
    CHECK(parse_law_text(R"({"type":"uniform","lo":0.5,"hi":1.5})", "beta").kind() ==
          LawKind::UniformInterval);
    const ParameterLaw poly = parse_law_text(R"({"type":"poly","lo":1.0,"hi":2.0,"k":3})", "beta");
    CHECK(poly.degree() == 3);

    CHECK_THROWS_AS(parse_law_text("{nonsense", "alpha"), ConfigError);
    CHECK_THROWS_AS(parse_law_text(R"({"type":"cauchy"})", "alpha"), ConfigError);
    CHECK_THROWS_AS(parse_law_text(R"({"type":"delta","x":-2})", "alpha"), ConfigError);
    // the offending field is named
    try {
        parse_law_text(R"({"type":"delta","x":-2})", "alpha");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("alpha") != std::string::npos);
    }
}

TEST_CASE("grid parsing") {
    CHECK(parse_grid_text("0.1,0.2,0.3", "g") == std::vector<double>{0.1, 0.2, 0.3});
    const std::vector<double> lin = parse_grid_text("0:1:5", "g");
    CHECK(lin.size() == 5);
    CHECK(lin.front() == 0.0);
    CHECK(lin.back() == 1.0);
    CHECK_THROWS_AS(parse_grid_text("0.3,0.2", "g"), ConfigError);
    CHECK_THROWS_AS(parse_grid_text("1:0:5", "g"), ConfigError);
    CHECK_THROWS_AS(parse_grid_text("a,b", "g"), ConfigError);
}

TEST_CASE("config ingestion validates keys and grids") {
    const auto doc = nlohmann::json::parse(R"({
        "alpha": {"type":"delta","x":0.5},
        "beta": {"type":"delta","x":0.5},
        "directions": [[1,1]],
        "r_grid": [5.0, 6.0],
        "seed": 7,
        "format": "csv"
    })");
    const RunConfig cfg = RunConfig::from_json(doc);
    CHECK(cfg.directions.size() == 1);
    CHECK(cfg.seed == 7);

    auto bad_key = doc;
    bad_key["lambda"] = 1.0;
    CHECK_THROWS_AS(RunConfig::from_json(bad_key), ConfigError);

    auto bad_grid = doc;
    bad_grid["r_grid"] = {6.0, 5.0};
    CHECK_THROWS_AS(RunConfig::from_json(bad_grid), ConfigError);
}

TEST_CASE("commands emit deterministic tables") {
    RunConfig cfg;
    cfg.alpha = ParameterLaw::point_mass(0.5);
    cfg.beta = ParameterLaw::point_mass(0.5);
    cfg.directions = {{1, 1}};
    cfg.r_grid = {4.0, 8.0};
    std::ostringstream a, b;
    run_command("rate", cfg, a);
    run_command("rate", cfg, b);
    CHECK(a.str() == b.str());
    CHECK(a.str().find("s,t,kind,r,value,lambda_star,z_star,regime") == 0);
    // shape value appears in full precision on the zero row
    CHECK(a.str().find("quenched,4,0,0,") != std::string::npos);
}

TEST_CASE("simulate emits replicate records") {
    RunConfig cfg;
    cfg.alpha = ParameterLaw::point_mass(0.5);
    cfg.beta = ParameterLaw::point_mass(0.5);
    cfg.directions = {{1, 1}};
    cfg.n = 20;
    cfg.reps = 5;
    cfg.estimator = "shape";
    std::ostringstream out;
    run_command("simulate", cfg, out);
    std::istringstream lines(out.str());
    std::string line;
    int data_rows = 0, comments = 0;
    bool header_seen = false;
    while (std::getline(lines, line)) {
        if (line.rfind("#", 0) == 0) ++comments;
        else if (line == "replicate,n,value") header_seen = true;
        else ++data_rows;
    }
    CHECK(header_seen);
    CHECK(data_rows == 5);
    CHECK(comments >= 3);
}

TEST_CASE("json output carries the same rows") {
    RunConfig cfg;
    cfg.alpha = ParameterLaw::point_mass(0.5);
    cfg.beta = ParameterLaw::point_mass(0.5);
    cfg.directions = {{1, 1}};
    cfg.format = "json";
    std::ostringstream out;
    run_command("phase", cfg, out);
    const auto doc = nlohmann::json::parse(out.str());
    CHECK(doc.at("rows").size() == 1);
    CHECK(doc.at("rows")[0].at("region") == "concave");
    CHECK(doc.at("rows")[0].at("c2") == "inf");
}

TEST_CASE("missing pieces raise config errors") {
    RunConfig cfg;
    std::ostringstream out;
    CHECK_THROWS_AS(run_command("shape", cfg, out), ConfigError);
    cfg.alpha = ParameterLaw::point_mass(0.5);
    cfg.beta = ParameterLaw::point_mass(0.5);
    CHECK_THROWS_AS(run_command("shape", cfg, out), ConfigError);  // no directions
    cfg.directions = {{1, 1}};
    CHECK_THROWS_AS(run_command("rate", cfg, out), ConfigError);  // no r_grid
    CHECK_THROWS_AS(run_command("nonsense", cfg, out), ConfigError);
}

TEST_CASE("exit codes through the argv entry point") {
    {
        const char* argv[] = {"cgmldp", "shape", "--alpha", R"({"type":"delta","x":0.5})",
                              "--beta", R"({"type":"delta","x":0.5})", "--s", "1", "--t", "1",
                              "--output", "/tmp/cgmldp_cli_test.csv"};
        CHECK(run_cli(12, argv) == 0);
        std::ifstream check("/tmp/cgmldp_cli_test.csv");
        CHECK(check.good());
    }
    {
        const char* argv[] = {"cgmldp", "shape", "--alpha", R"({"type":"delta","x":-1})",
                              "--beta", R"({"type":"delta","x":0.5})", "--s", "1", "--t", "1"};
        CHECK(run_cli(10, argv) == 1);
    }
    {
        // stationary z outside its admissible window: a domain error
        const char* argv[] = {"cgmldp",    "lyapunov", "--alpha",
                              R"({"type":"delta","x":0.5})", "--beta",
                              R"({"type":"delta","x":0.5})", "--s",
                              "1",        "--t",      "1",
                              "--lambda-grid", "0.1,0.2",  "--z",
                              "0.9"};
        CHECK(run_cli(14, argv) == 2);
    }
    {
        const char* argv[] = {"cgmldp", "frobnicate"};
        CHECK(run_cli(2, argv) == 1);
    }
}

}  // TEST_SUITE
