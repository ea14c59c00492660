// End-to-end tests of the relkit binary: exit codes, reports, determinism.
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out;
};

CmdResult run(const std::string& args, const std::string& env = "") {
  std::string cmd =
      env + (env.empty() ? "" : " ") + RELKIT_BIN + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  CmdResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    res.out.append(buf.data(), n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string sample(const char* name) {
  return std::string(RELKIT_SOURCE_DIR) + "/samples/" + name;
}

// the JSON report schema: required keys with their expected types
void validate_report(const std::string& line) {
  nlohmann::json j = nlohmann::json::parse(line);
  REQUIRE(j.is_object());
  REQUIRE(j.contains("job"));
  CHECK(j["job"].is_string());
  REQUIRE(j.contains("inputs"));
  CHECK(j["inputs"].is_array());
  REQUIRE(j.contains("verdict"));
  REQUIRE(j["verdict"].is_string());
  std::string v = j["verdict"];
  CHECK((v == "true" || v == "false" || v == "unknown" || v == "pass" ||
         v == "fail"));
  REQUIRE(j.contains("reason"));
  CHECK((j["reason"].is_null() || j["reason"].is_string()));
  REQUIRE(j.contains("witness"));
  CHECK((j["witness"].is_null() || j["witness"].is_array()));
  REQUIRE(j.contains("ms"));
  CHECK(j["ms"].is_number());
  REQUIRE(j.contains("budget"));
  CHECK(j["budget"].is_object());
  // plain-text JSON: no ANSI escape codes anywhere
  CHECK(line.find('\x1b') == std::string::npos);
}

std::string strip_ms(std::string line) {
  nlohmann::json j = nlohmann::json::parse(line);
  j["ms"] = 0;
  return j.dump();
}

}  // namespace

TEST_CASE("entail exit codes") {
  SUBCASE("a derivable rigid goal exits 0") {
    CmdResult r = run("entail " + sample("numbers.rks") +
                      " --theory I --goal \"0 + 1 = 1\" --depth 2");
    CHECK(r.exit_code == 0);
  }
  SUBCASE("the running example goal x < y exits 0 at depth 3") {
    CmdResult r = run("entail " + sample("numbers.rks") +
                      " --theory I --state S --goal \"x < y\" --depth 3");
    CHECK(r.exit_code == 0);
  }
  SUBCASE("an underivable goal under schemas exits 2") {
    CmdResult r = run("entail " + sample("numbers.rks") +
                      " --theory I --goal \"0 = 1\" --depth 2");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("budget-exhausted") != std::string::npos);
  }
  SUBCASE("an unknown theory name exits 3") {
    CmdResult r = run("entail " + sample("numbers.rks") +
                      " --theory Nope --goal \"0 = 0\"");
    CHECK(r.exit_code == 3);
  }
  SUBCASE("a ground-only theory decides underivable goals negatively") {
    CmdResult r = run(
        "entail " + sample("ltl.rks") + " --theory Triv --state s0 --goal p");
    CHECK(r.exit_code == 1);
  }
}

TEST_CASE("frame-verify exit codes and witnesses") {
  SUBCASE("the sample frame passes its conditions") {
    CmdResult r = run("frame-verify " + sample("ltl.rks") +
                      " --frame F --conditions C");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("pass") != std::string::npos);
  }
  SUBCASE("a missing successor fails with a witness state") {
    std::string extra = std::string(RELKIT_SOURCE_DIR) +
                        "/tests/golden/broken_frame.rks";
    CmdResult r = run("frame-verify " + sample("ltl.rks") + " " + extra +
                      " --frame Broken --conditions C");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("witness") != std::string::npos);
    CHECK(r.out.find("x=b1") != std::string::npos);
  }
  SUBCASE("the axiom self-test passes on any frame") {
    CmdResult r =
        run("frame-verify " + sample("ltl.rks") + " --frame F --axioms-selftest");
    CHECK(r.exit_code == 0);
  }
}

TEST_CASE("check exit codes") {
  SUBCASE("ltl: X p holds on the two-state lasso") {
    CmdResult r = run("check " + sample("ltl.rks") +
                      " --logic ltl --frame F --interp Triv --start s0 "
                      "--formula \"X p\"");
    CHECK(r.exit_code == 0);
  }
  SUBCASE("ctl: EX p is false at s1 of a frame where no successor has p") {
    CmdResult r = run("check " + sample("ltl.rks") +
                      " --logic ctl --frame F --interp Triv --start s1 "
                      "--formula \"EX q\"");
    CHECK(r.exit_code == 1);
  }
  SUBCASE("ctlstar: an insufficient bound reports budget exhaustion") {
    CmdResult r = run("check " + sample("ltl.rks") +
                      " --logic ctlstar --frame F --interp Triv --start s0 "
                      "--formula \"E G q\" --bound 1");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("budget-exhausted") != std::string::npos);
  }
  SUBCASE("pdl: the declared check job passes") {
    CmdResult r = run("check " + sample("numbers.rks") + " --all");
    CHECK(r.exit_code == 0);
  }
  SUBCASE("frame-condition violations are usage errors") {
    std::string extra =
        std::string(RELKIT_SOURCE_DIR) + "/tests/golden/broken_frame.rks";
    CmdResult r = run("check " + sample("ltl.rks") + " " + extra +
                      " --logic ltl --frame Broken --interp Triv --start b0 "
                      "--formula \"X p\"");
    CHECK(r.exit_code == 3);
  }
}

TEST_CASE("morphism exit codes") {
  SUBCASE("the folding projection is accepted") {
    CmdResult r = run("morphism " + sample("morph.rks") +
                      " --src G1 --dst G2 --map h");
    CHECK(r.exit_code == 0);
  }
  SUBCASE("a broken backward condition is rejected with a witness") {
    std::string extra =
        std::string(RELKIT_SOURCE_DIR) + "/tests/golden/broken_map.rks";
    CmdResult r = run("morphism " + sample("morph.rks") + " " + extra +
                      " --src H1 --dst H2 --map hbad");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("backward") != std::string::npos);
  }
}

TEST_CASE("JSON reports validate against the schema and are deterministic") {
  std::string cmd = "entail " + sample("numbers.rks") +
                    " --theory I --state S --goal \"x < y\" --depth 3 --json";
  CmdResult a = run(cmd);
  CmdResult b = run(cmd);
  CHECK(a.exit_code == 0);
  validate_report(a.out);
  CHECK(strip_ms(a.out) == strip_ms(b.out));

  CmdResult c = run("check " + sample("ltl.rks") +
                    " --logic ctlstar --frame F --interp Triv --start s0 "
                    "--formula \"E X p\" --bound 3 --json");
  CHECK(c.exit_code == 0);
  validate_report(c.out);
  // existential verdicts report the witness lasso
  nlohmann::json j = nlohmann::json::parse(c.out);
  REQUIRE(j["witness"].is_array());
  CHECK(std::string(j["witness"][0]).find("lasso") != std::string::npos);

  CmdResult d = run("frame-verify " + sample("ltl.rks") +
                    " --frame F --conditions C --json");
  validate_report(d.out);
  CmdResult e = run("morphism " + sample("morph.rks") +
                    " --src G1 --dst G2 --map h --json");
  validate_report(e.out);
}

TEST_CASE("parse failures exit 3 with diagnostics on stderr") {
  CmdResult r = run("entail " + sample("numbers.rks") +
                    " --theory I --goal \"0 +\"");
  CHECK(r.exit_code == 3);
}

TEST_CASE("RELKIT_DEPTH overrides the default depth, flags override both") {
  std::string base = "entail " + sample("numbers.rks") +
                     " --theory I --goal \"0 = 1\" --json";
  CmdResult env_only = run(base, "RELKIT_DEPTH=7");
  nlohmann::json j = nlohmann::json::parse(env_only.out);
  CHECK(j["budget"]["depth"] == 7);
  CmdResult flag_wins = run(base + " --depth 2", "RELKIT_DEPTH=7");
  nlohmann::json j2 = nlohmann::json::parse(flag_wins.out);
  CHECK(j2["budget"]["depth"] == 2);
}
