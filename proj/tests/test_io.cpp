#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "fixtures.hpp"
#include <json.hpp>

#include "vab/io.hpp"

using namespace vab;

namespace {
const std::string kFixtures = VAB_FIXTURE_DIR;
}

TEST_CASE("fixture files parse to the reference structures") {
    InputBundle f1 = parse_input_file(kFixtures + "/heisenberg.json");
    VertexAlgebroid ref = fix::f1();
    CHECK(f1.algebroid.A.dim == 1);
    CHECK(f1.algebroid.A.mul == ref.A.mul);
    CHECK(f1.algebroid.action == ref.action);
    CHECK(f1.algebroid.bracket == ref.bracket);
    CHECK(f1.algebroid.pairing == ref.pairing);
    CHECK(f1.grading.T == 2);
    CHECK(f1.grading.secB == std::vector<int>{1});
    REQUIRE(f1.fibers.size() == 1);
    CHECK(f1.fibers[0].dim == 1);
    CHECK(f1.warnings.empty());

    InputBundle f3 = parse_input_file(kFixtures + "/dual_numbers.json");
    CHECK(f3.algebroid.A.mul == fix::dual_numbers().mul);
    CHECK(f3.algebroid.dimB == 0);
    CHECK(f3.grading.secA == std::vector<int>{0, 1});

    InputBundle f2 = parse_input_file(kFixtures + "/rank3_abelian.json");
    CHECK(f2.algebroid.pairing == fix::f2().pairing);
}

TEST_CASE("empty basis: degenerate but valid") {
    InputBundle in = parse_input_text(R"({"T": 1, "A": {"basis": []}, "B": {}})", "inline");
    CHECK(in.algebroid.A.dim == 0);
    CHECK(in.algebroid.dimB == 0);
    CHECK(check_comm_algebra(in.algebroid.A).pass());
    CHECK(check_vertex_algebroid(in.algebroid).pass());
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_input_text("{", "x"), input_error);
    CHECK_THROWS_AS(parse_input_text(R"({"T": 0, "A": {"basis": []}})", "x"), input_error);
    // malformed rational
    CHECK_THROWS_AS(
        parse_input_text(
            R"({"A": {"basis": ["e"], "unit": "e", "product": [["e","e","e","1/0"]]}})", "x"),
        input_error);
    // duplicate labels
    CHECK_THROWS_AS(parse_input_text(R"({"A": {"basis": ["e","e"], "unit": "e"}})", "x"), input_error);
    CHECK_THROWS_AS(
        parse_input_text(R"({"A": {"basis": ["e"], "unit": "e"}, "B": {"basis": ["e"]}})", "x"),
        input_error);
    // unknown fields
    CHECK_THROWS_AS(parse_input_text(R"({"A": {"basis": []}, "Q": 1})", "x"), input_error);
    CHECK_THROWS_AS(parse_input_text(R"({"A": {"basis": [], "spam": []}})", "x"), input_error);
    // unknown label and bad sector
    CHECK_THROWS_AS(
        parse_input_text(R"({"A": {"basis": ["e"], "unit": "e"}, "sectors": {"q": 1}})", "x"),
        input_error);
    CHECK_THROWS_AS(
        parse_input_text(R"({"T": 2, "A": {"basis": ["e"], "unit": "e"}, "sectors": {"e": 5}})", "x"),
        input_error);
}

TEST_CASE("unreduced rationals are normalized with a warning") {
    InputBundle in = parse_input_text(
        R"({"A": {"basis": ["e"], "unit": "e", "product": [["e","e","e","2/4"]]}})", "inline");
    REQUIRE(in.warnings.size() == 1);
    CHECK(in.algebroid.A.mul[0][0].at(0) == Rational(1, 2));
}

TEST_CASE("cli end-to-end: exit codes, determinism, machine format") {
    const std::string cli = VAB_CLI_PATH;
    auto run = [&](const std::string& args, std::string& out) {
        std::string cmd = cli + " " + args + " 2>&1";
        FILE* p = popen(cmd.c_str(), "r");
        REQUIRE(p != nullptr);
        char buf[4096];
        out.clear();
        while (size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
        return WEXITSTATUS(pclose(p));
    };

    std::string out1, out2;
    CHECK(run("check --input " + kFixtures + "/heisenberg.json", out1) == 0);
    CHECK(run("check --input " + kFixtures + "/heisenberg.json", out2) == 0);
    CHECK(out1 == out2); // byte-identical reports

    std::string dims;
    CHECK(run("build --input " + kFixtures + "/heisenberg.json --max-degree 5", dims) == 0);
    CHECK(dims.find("1 1 2 3 5 7") != std::string::npos);
    CHECK(run("build --input " + kFixtures + "/rank3_abelian.json --max-degree 3", dims) == 0);
    CHECK(dims.find("1 3 9 22") != std::string::npos);
    CHECK(run("build --input " + kFixtures + "/dual_numbers.json --max-degree 2", dims) == 0);
    CHECK(dims.find("2 0 0") != std::string::npos);

    // machine format round-trips through the JSON parser
    std::string js1, js2;
    CHECK(run("twist --input " + kFixtures + "/heisenberg.json --max-degree 2 --format json", js1) == 0);
    auto parsed = nlohmann::json::parse(js1);
    CHECK(parsed["pass"] == true);
    CHECK(parsed.dump(2) + "\n" == js1);
    CHECK(run("twist --input " + kFixtures + "/heisenberg.json --max-degree 2 --format json", js2) == 0);
    CHECK(js1 == js2);

    // exit 2: input errors
    std::string err;
    CHECK(run("check --input /nonexistent.json", err) == 2);
    const std::string bad = "/tmp/vab_bad_fixture.json";
    {
        std::ofstream f(bad);
        f << R"({"A": {"basis": ["e"], "unit": "e", "product": [["e","e","e","2"]]}})";
    }
    // exit 1: violations (e e = 2e breaks the unit law)
    CHECK(run("check --input " + bad, err) == 1);
    CHECK(err.find("unit-law") != std::string::npos);
    std::remove(bad.c_str());
}

TEST_CASE("cli verify runs end to end on a small job") {
    const std::string cli = VAB_CLI_PATH;
    std::string cmd = cli + " verify --input " + kFixtures +
                      "/dual_numbers.json --max-degree 1 --grid 1 --w-degree 1 --fun-degree 1 >/dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
}

TEST_CASE("cli exit code 3 on window exhaustion") {
    const std::string cli = VAB_CLI_PATH;
    // degree cutoff 0 leaves no room for the degree-1 ideal generators
    std::string cmd = cli + " build --input " + kFixtures + "/heisenberg.json --max-degree 0 2>/dev/null";
    int rc = WEXITSTATUS(std::system(cmd.c_str()));
    CHECK(rc == 3);
}
