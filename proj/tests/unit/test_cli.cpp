#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "ramansim/cli.hpp"
#include "ramansim/config.hpp"
#include "ramansim/error.hpp"

using namespace ramansim;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string config_error(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

fs::path scratch_dir() {
    const fs::path d = fs::temp_directory_path() / "ramansim_cli_test";
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("empty config resolves to defaults") {
    const LoadedConfig lc = parse_config("{}");
    RunConfig expected;
    expected.matter.omega_a = Wavenumber{expected.experiment.omega_p.value + expected.matter.omega_ac.value};
    CHECK(lc.config == expected);
    CHECK(lc.config.matter.delta.value == 120.0);
    CHECK(lc.config.matter.k.value == 18.0);
    CHECK(lc.provenance.at("matter.omega_a") == "derived");
    CHECK(lc.provenance.at("twin.T1") == "default");
}

TEST_CASE("fast preset") {
    const LoadedConfig lc = parse_config(R"({"preset": "fast"})");
    CHECK(lc.config.matter.k.value == 53.0);
    CHECK(lc.config.matter.gamma_a.value == 43.0);
    CHECK(lc.provenance.at("matter.k") == "preset");
    // Explicit keys win over the preset.
    const LoadedConfig o = parse_config(R"({"preset": "fast", "matter": {"k": 30}})");
    CHECK(o.config.matter.k.value == 30.0);
    CHECK(o.provenance.at("matter.k") == "config");
    // The override replaces the file's preset.
    CHECK(parse_config(R"({"preset": "slow"})", std::string("fast")).config.matter.k.value == 53.0);
}

TEST_CASE("invalid configurations are rejected") {
    CHECK(config_error(R"({"twin": {"T1": 130, "T2": 120}})").find("entanglement time") != std::string::npos);
    CHECK(config_error(R"({"matter": {"gammaa": 9}})").find("gammaa") != std::string::npos);
    CHECK(config_error(R"({"matter": {"delta": "wide"}})") != "");
    CHECK(config_error(R"({"matter": {"gamma_a": 0}})") != "");
    CHECK(config_error(R"({"preset": "medium"})") != "");
    CHECK(config_error(R"({"grids": {"nu": {"start": 0, "stop": 1, "n": 1}}})") != "");
    const std::string syntax = config_error("{\n  \"matter\": {\n    \"delta\": 120,,\n  }\n}");
    CHECK(syntax.find("line 3") != std::string::npos);
}

TEST_CASE("emitted config round-trips") {
    const LoadedConfig a = parse_config(R"({"preset": "fast", "twin": {"T1": 10}, "experiment": {"delay_T": 250},
                                            "grids": {"nu": {"start": -500, "stop": 500, "n": 11}}, "verify": true})");
    const LoadedConfig b = parse_config(emit_config(a.config).dump());
    CHECK(a.config == b.config);
    CHECK(emit_config(a.config) == emit_config(b.config));
}

TEST_CASE("format_double is shortest round-trip") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 1e22, 0.0, 3.5583134409143375e-8}) CHECK(std::stod(format_double(v)) == v);
    CHECK(format_double(0.1) == "0.1");
    CHECK(csv_text({"a", "b"}, {{1.0, 0.5}}) == "a,b\n1,0.5\n");
}

TEST_CASE("schmidt command output") {
    const LoadedConfig lc = parse_config(R"({"grids": {"schmidt": {"start": -5000, "stop": 5000, "n": 64}}})");
    const fs::path base = scratch_dir() / "schmidt";
    std::ostringstream err;
    REQUIRE(run_command("schmidt", lc, base, err) == 0);
    const std::string csv = slurp(base.string() + ".csv");
    CHECK(csv.rfind("n,lambda_n\n", 0) == 0);
    const auto j = nlohmann::json::parse(slurp(base.string() + ".json"));
    CHECK(j.at("command") == "schmidt");
    CHECK(j.at("version") == kLibraryVersion);
    CHECK(j.at("results").at("r_p").get<double>() >= 1.0);
    CHECK(j.at("config") == emit_config(lc.config));

    const fs::path again = scratch_dir() / "schmidt_again";
    REQUIRE(run_command("schmidt", lc, again, err) == 0);
    CHECK(slurp(again.string() + ".csv") == csv);
    CHECK(slurp(again.string() + ".json") == slurp(base.string() + ".json"));
}

TEST_CASE("spectrum commands") {
    const LoadedConfig lc = parse_config(R"({"grids": {"nu": {"start": 600, "stop": 640, "n": 5}}})");
    for (const std::string cmd : {"absorption", "fsrs", "ifsrs21"}) {
        const fs::path base = scratch_dir() / cmd;
        std::ostringstream err;
        REQUIRE(run_command(cmd, lc, base, err) == 0);
        std::istringstream csv(slurp(base.string() + ".csv"));
        std::string line;
        std::getline(csv, line);
        CHECK(line == "nu,value");
        int rows = 0;
        while (std::getline(csv, line)) ++rows;
        CHECK(rows == 5);
    }
}

TEST_CASE("unknown command fails") {
    std::ostringstream err;
    CHECK(run_command("nonsense", parse_config("{}"), scratch_dir() / "x", err) != 0);
    CHECK(!err.str().empty());
}
