#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dmop/scenario.hpp"

using namespace dmop;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("minimal scenario gets documented defaults") {
    Scenario s = parse_scenario("problem=dsw\n");
    CHECK(s.problem == "dsw");
    CHECK(s.mode == RunMode::Both);
    CHECK(s.seed == 42);
    CHECK(s.tau_T == 10);
    CHECK(s.grid == 101);
    CHECK(s.mu == 100);
    CHECK(s.params.at("a11") == 1.0);
    CHECK(s.params.at("n") == 2.0);
    CHECK(s.times == std::vector<double>{0.0, 1.0});
}

TEST_CASE("comments and spacing are tolerated") {
    Scenario s = parse_scenario("# header\nproblem = dsw  # trailing\n\n  seed = 7\n");
    CHECK(s.seed == 7);
}

TEST_CASE("range violations name the key") {
    try {
        parse_scenario("problem=dsw\ntau_T=0\n");
        FAIL("expected error");
    } catch (const ScenarioError& e) {
        CHECK(std::string(e.what()).find("tau_T") != std::string::npos);
    }
}

TEST_CASE("unknown keys are rejected by name") {
    try {
        parse_scenario("problem=dsw\ngird=10\n");
        FAIL("expected error");
    } catch (const ScenarioError& e) {
        CHECK(std::string(e.what()).find("gird") != std::string::npos);
    }
}

TEST_CASE("keys from a different problem are rejected") {
    CHECK_THROWS_AS(parse_scenario("problem=dsw\nrho=0.5\n"), ScenarioError);
}

TEST_CASE("parse errors carry line numbers") {
    try {
        parse_scenario("problem=dsw\nthis is not a pair\n");
        FAIL("expected error");
    } catch (const ScenarioError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("missing problem key fails") {
    CHECK_THROWS_AS(parse_scenario("seed=1\n"), ScenarioError);
}

TEST_CASE("build_problem covers every listed name") {
    for (const auto& name : problem_names()) {
        Scenario s = parse_scenario("problem=" + name + "\n");
        DynamicProblem p = build_problem(s);
        CHECK(p.dimension() >= 1);
        CHECK(p.objectives() >= 2);
    }
}

TEST_CASE("manifest contains every resolved parameter") {
    Scenario s = parse_scenario("problem=dtlz2-dynamic\nk=2\np=1\n");
    std::string m = scenario_manifest(s);
    for (const char* key : {"problem=", "mode=", "seed=", "tau_T=", "s=", "t0=", "t_end=",
                            "times=", "grid=", "eps=", "budget=", "mu=", "g_mode=", "k=", "p="})
        CHECK(m.find(key) != std::string::npos);
}

TEST_CASE("run_scenario writes the artifact set and is reproducible") {
    Scenario s = parse_scenario(
        "problem=dsw\nmode=analyze\ngrid=41\ntimes=0,1\nseed=3\n");
    fs::path out1 = fs::temp_directory_path() / "dmop_scn_a";
    fs::path out2 = fs::temp_directory_path() / "dmop_scn_b";
    fs::remove_all(out1);
    fs::remove_all(out2);
    REQUIRE(run_scenario(s, out1.string()) == 0);
    REQUIRE(run_scenario(s, out2.string()) == 0);
    for (const char* name : {"fronts.csv", "classification.csv", "manifest.txt"})
        CHECK(fs::exists(out1 / name));
    CHECK_FALSE(fs::exists(out1 / "timeline.csv"));
    CHECK(slurp(out1 / "fronts.csv") == slurp(out2 / "fronts.csv"));
    CHECK(slurp(out1 / "classification.csv") == slurp(out2 / "classification.csv"));
}

TEST_CASE("optimize mode writes a timeline") {
    Scenario s = parse_scenario(
        "problem=two-sphere\nmode=optimize\nbudget=2000\nmu=30\nseed=3\n");
    fs::path out = fs::temp_directory_path() / "dmop_scn_c";
    fs::remove_all(out);
    REQUIRE(run_scenario(s, out.string()) == 0);
    CHECK(fs::exists(out / "timeline.csv"));
    std::string tl = slurp(out / "timeline.csv");
    CHECK(tl.find("tau,t,evaluations,change,archive_size,hv\n") == 0);
}

TEST_CASE("failing scenarios clean up partial artifacts") {
    Scenario s = parse_scenario("problem=dsw\nmode=analyze\ngrid=2000\ntimes=0,1\n");
    s.params["n"] = 4; // 2000^4 lattice blows the evaluation budget
    fs::path out = fs::temp_directory_path() / "dmop_scn_d";
    fs::remove_all(out);
    CHECK(run_scenario(s, out.string()) != 0);
    CHECK_FALSE(fs::exists(out / "fronts.csv"));
    CHECK_FALSE(fs::exists(out / "classification.csv"));
}
