#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

std::string binary() {
    const char* bin = std::getenv("GKAT_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "GKAT_BIN must point at the gkat binary (set by ctest)");
    return bin;
}

RunResult run(const std::string& args) {
    std::string cmd = binary() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "/tmp/gkat_test_" + name;
    std::ofstream f(path);
    f << content;
    return path;
}

const char* kSession =
    "tests: t1;\n"
    "actions: p, q;\n"
    "loop = while t1 do p\n"
    "pzero = p; 0\n"
    "zero = 0\n";

}  // namespace

TEST_CASE("cli: equivalence exit codes and counterexamples") {
    std::string f = write_temp("session.gkat", kSession);

    RunResult full = run("equiv " + f + " pzero zero --mode full");
    CHECK(full.exit_code == 0);
    CHECK(full.out.find("equivalent") == 0);
    CHECK(full.out.find("s0 ~ s0") != std::string::npos);  // the witness is shown

    RunResult strict = run("equiv " + f + " pzero zero --mode no-early-termination");
    CHECK(strict.exit_code == 1);
    CHECK(strict.out.find("not equivalent") != std::string::npos);
    CHECK(strict.out.find("word:") != std::string::npos);

    RunResult missing = run("equiv " + f + " pzero nosuch");
    CHECK(missing.exit_code == 2);

    RunResult as_json = run("equiv " + f + " pzero zero --mode no-early-termination --json");
    CHECK(as_json.exit_code == 1);
    auto j = nlohmann::json::parse(as_json.out);
    CHECK(j["equivalent"] == false);
    CHECK(j["counterexample"]["word"].size() == 1);
}

TEST_CASE("cli: unfold emits the golden dump") {
    std::string f = write_temp("session.gkat", kSession);
    RunResult r = run("unfold " + f + " loop --depth 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "!t1 -> 1\n"
          "t1 -> p\n"
          "t1.!t1 -> 1\n"
          "t1.t1 -> p\n");

    RunResult j = run("unfold " + f + " loop --depth 2 --json");
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["entries"]["t1.t1"] == "p");

    RunResult norm = run("unfold " + f + " pzero --depth 2 --normalized");
    CHECK(norm.out ==
          "!t1 -> 0\n"
          "t1 -> 0\n");

    RunResult too_deep = run("unfold " + f + " loop --depth 40");
    CHECK(too_deep.exit_code == 2);
}

TEST_CASE("cli: automaton export and round trip") {
    std::string f = write_temp("session.gkat", kSession);
    RunResult js = run("automaton " + f + " loop --format json");
    CHECK(js.exit_code == 0);
    auto parsed = nlohmann::json::parse(js.out);
    CHECK(parsed["states"].size() == 2);
    CHECK(parsed["start"] == "s0");

    std::string autpath = write_temp("loop.json", js.out);
    std::string ref = write_temp("ref.gkat",
                                 "tests: t1;\nactions: p, q;\nmachine = @" + autpath + "\n");
    RunResult round = run("automaton " + ref + " machine --format json");
    CHECK(round.out == js.out);

    RunResult dot = run("automaton " + f + " loop --format dot");
    CHECK(dot.out.find("digraph") == 0);

    RunResult norm = run("normalize " + f + " pzero --format json");
    auto njson = nlohmann::json::parse(norm.out);
    CHECK(njson["delta"]["s0"].empty());  // all entries pruned to reject
}

TEST_CASE("cli: the fixture export is byte-stable") {
    RunResult fig4 = run("fixtures fig4");
    CHECK(fig4.exit_code == 0);
    CHECK(fig4.out == R"({
  "tests": [
    "t1"
  ],
  "actions": [
    "p",
    "q"
  ],
  "states": [
    "v0",
    "v1"
  ],
  "start": "v0",
  "delta": {
    "v0": {
      "!t1": "accept",
      "t1": {
        "act": "p",
        "to": "v1"
      }
    },
    "v1": {
      "!t1": {
        "act": "q",
        "to": "v0"
      },
      "t1": "accept"
    }
  }
}
)");
}

TEST_CASE("cli: nesting analysis on the fixtures") {
    RunResult fig4 = run("fixtures fig4");
    CHECK(fig4.exit_code == 0);
    std::string fig4_path = write_temp("fig4.json", fig4.out);
    std::string session = write_temp("fix.gkat",
                                     "tests: t1;\nactions: p, q;\nping = @" + fig4_path + "\n");

    RunResult nest = run("check-nesting " + session + " ping");
    CHECK(nest.exit_code == 1);
    CHECK(nest.out.find("v0") != std::string::npos);
    CHECK(nest.out.find("v1") != std::string::npos);

    RunResult nest_json = run("check-nesting " + session + " ping --json");
    auto j = nlohmann::json::parse(nest_json.out);
    CHECK(j["passed"] == false);
    CHECK(j["violation"]["x"] == "v0");
    CHECK(j["violation"]["y"] == "v1");
}

TEST_CASE("cli: well-nestedness of the eight-state example and its image") {
    RunResult fig5 = run("fixtures fig5");
    std::string p5 = write_temp("fig5.json", fig5.out);
    RunResult quot = run("fixtures fig5_quotient");
    std::string pq = write_temp("fig5q.json", quot.out);
    std::string session = write_temp(
        "fix5.gkat",
        "tests: t1, t2;\nactions: p;\nwhole = @" + p5 + "\nimage = @" + pq + "\n");

    CHECK(run("wellnested " + session + " whole").exit_code == 0);
    CHECK(run("wellnested " + session + " image").exit_code == 1);
}

TEST_CASE("cli: solving a system reproduces the loop") {
    const char* system = R"({
      "tests": ["t1"], "actions": ["p"],
      "variables": ["x"],
      "equations": [
        {"var": "x", "terms": [{"coeff": "p", "guard": "t1", "to": "x"}], "constant": "!t1"}
      ]
    })";
    std::string f = write_temp("system.json", system);
    RunResult r = run("solve --system " + f + " --depth 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "x:\n"
          "!t1 -> 1\n"
          "t1 -> p\n"
          "t1.!t1 -> 1\n"
          "t1.t1 -> p\n");

    // the same behaviors read back from the automaton route
    RunResult fx = run("fixtures ploop");
    std::string ploop = write_temp("ploop.json", fx.out);
    RunResult via_aut = run("solve --automaton " + ploop + " --depth 2 --json");
    auto j = nlohmann::json::parse(via_aut.out);
    CHECK(j["variables"]["x0"]["t1.t1"] == "p");
    CHECK(j["variables"]["x1"]["!t1"] == "1");
}

TEST_CASE("cli: axiom suite over a session declaration") {
    std::string f = write_temp("session.gkat", kSession);
    RunResult r = run("axioms " + f + " --samples 5 --seed 3 --json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["passed"] == true);
    CHECK(j["rows"].size() == 14);
}
