#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "aic/cli.hpp"
#include "aic/corpus.hpp"
#include "aic/proofscript.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace aic;

namespace {

struct cli_result {
  int code = -1;
  std::string out;
  std::string err;
};

cli_result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  cli_result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string temp_file(const std::string& name, const std::string& content) {
  std::string path = "/tmp/aic_cli_" + name;
  std::ofstream f(path, std::ios::binary);
  f << content;
  return path;
}

size_t count_lines_starting(const std::string& text, const std::string& prefix) {
  size_t n = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) n += line.rfind(prefix, 0) == 0;
  return n;
}

nlohmann::json last_json_line(const std::string& text) {
  std::istringstream in(text);
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty() && line.front() == '{') last = line;
  REQUIRE(!last.empty());
  return nlohmann::json::parse(last);
}

}  // namespace

TEST_CASE("the pinned front-end examples work end to end") {
  cli_result r = run_cli({"eval", "--lattice", "C3", "--bind", "a=<|0,2>",
                          "--term", "dia a"});
  CHECK(r.code == 0);
  CHECK(r.out == "<|2>\n");

  r = run_cli({"corpus", "check", "--all"});
  CHECK(r.code == 0);
  CHECK(count_lines_starting(r.out, "ok ") >= 30);
  CHECK(r.out.find("all ok") != std::string::npos);

  // a single-proof document checked under an explicit ruleset spec; its
  // dependencies resolve against the bundled library
  const proof_script* tkp = corpus::embedded().find("tkp-fp");
  REQUIRE(tkp != nullptr);
  std::string path = temp_file("tkp-fp.proof", emit_proof_script(*tkp));
  r = run_cli({"check", path, "--rules", "AIC1+wcont(F)"});
  CHECK(r.code == 0);
  CHECK(r.out.find("ok tkp-fp") != std::string::npos);
}

TEST_CASE("exit codes separate success, verification failure and usage") {
  // usage: unknown subcommand, missing input, unreadable file
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"eval", "--term", "dia a"}).code == 2);
  CHECK(run_cli({"check", "/nonexistent/x.proof"}).code == 2);
  CHECK(run_cli({"corpus", "check", "no-such-proof"}).code == 2);
  CHECK(run_cli({}).code == 2);

  // help is not an error
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({"refute", "--help"}).code == 0);

  // verification failure: a proof whose step does not match its rule
  std::string bad = temp_file("bad.proof",
                              "proof bad\n"
                              "ruleset AIC0\n"
                              "show top <= bot\n"
                              "\n"
                              "  step bot :: top <= bot\n");
  cli_result r = run_cli({"check", bad});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL bad") != std::string::npos);
  CHECK(r.out.find("MatchFail") != std::string::npos);
  // the trailing line is machine-readable diagnostics
  nlohmann::json j = last_json_line(r.out);
  CHECK(j["schema"] == "aic/1");
  CHECK(j["ok"] == false);
  CHECK(j["proofs"][0]["name"] == "bad");
}

TEST_CASE("refutation finds the continuity gap and reports it both ways") {
  std::string qe = temp_file("gap.qe", "funcs F\nshow F dia a <= dia F a\n");
  cli_result r = run_cli({"refute", qe, "--trials", "200", "--seed", "2026",
                          "--lattices", "B2"});
  CHECK(r.code == 1);
  CHECK(r.out.rfind("seed 2026\n", 0) == 0);
  CHECK(r.out.find("violated: F dia a <= dia F a") != std::string::npos);

  r = run_cli({"refute", qe, "--trials", "200", "--seed", "2026", "--lattices",
               "B2", "--json"});
  CHECK(r.code == 1);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == "aic/1");
  CHECK(j["command"] == "refute");
  CHECK(j["seed"] == 2026);
  CHECK(j["found"] == true);
  CHECK(j["counterexample"]["lattice"] == "B2");
  CHECK(j["counterexample"]["violated"] == "F dia a <= dia F a");

  // a valid identity survives and exits zero
  std::string valid = temp_file("valid.qe",
                                "show dia (a \\/ b) = dia a \\/ dia b\n");
  r = run_cli({"refute", valid, "--trials", "150", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK(r.out.find("no counterexample in 150 trials") != std::string::npos);

  // premises gate the conclusion: an inflationary premise makes it vacuous
  std::string gated = temp_file("gated.qe",
                                "assume a <= sh a\nshow dia dia a <= box dia a\n");
  CHECK(run_cli({"refute", gated, "--trials", "150", "--seed", "11"}).code == 0);
}

TEST_CASE("fuzz reports every rule and honors the seed environment override") {
  cli_result r = run_cli({"fuzz", "--rules", "AIC0", "--trials", "40", "--seed",
                          "3", "--json"});
  CHECK(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == "aic/1");
  CHECK(j["ok"] == true);
  CHECK(j["entries"].size() == 44);
  CHECK(j["fuzzed"] == 43);
  CHECK(j["skipped"] == 1);

  setenv("AIC_SEED", "123", 1);
  r = run_cli({"fuzz", "--rules", "EQ", "--trials", "10"});
  CHECK(r.out.rfind("seed 123\n", 0) == 0);
  // an explicit flag still wins over the environment
  r = run_cli({"fuzz", "--rules", "EQ", "--trials", "10", "--seed", "4"});
  CHECK(r.out.rfind("seed 4\n", 0) == 0);
  unsetenv("AIC_SEED");
  r = run_cli({"fuzz", "--rules", "EQ", "--trials", "10"});
  CHECK(r.out.rfind("seed 0\n", 0) == 0);
}

TEST_CASE("discrete decide reports bound, oracle agreement and outcome") {
  std::string prem = temp_file("prem.txt", "sh x = sh sh x\n");
  cli_result r = run_cli({"discrete", "decide", "--premises", prem, "--goal",
                          "sh sh sh x = sh sh sh sh sh x", "--bound", "8",
                          "--compare"});
  CHECK(r.code == 0);
  CHECK(r.out.find("bound 8") != std::string::npos);
  CHECK(r.out.find("decision: provable") != std::string::npos);
  CHECK(r.out.find("agree: yes") != std::string::npos);

  r = run_cli({"discrete", "decide", "--premises", prem, "--goal",
               "sh x = x", "--compare", "--json"});
  CHECK(r.code == 1);  // unknown goal: verification did not succeed
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["decision"] == "unknown");
  CHECK(j["oracle"]["decision"] == "unknown");
  CHECK(j["agree"] == true);
  CHECK(j["bound"] == 2 + 1 + 1 * 3);  // derived default bound

  // goals without premises work; non-homogeneous input is a usage error
  CHECK(run_cli({"discrete", "decide", "--goal", "hd x = hd x"}).code == 0);
  cli_result bad = run_cli({"discrete", "decide", "--goal", "dia x = x"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("NotHomogeneous") != std::string::npos);
}

TEST_CASE("rule listings expose the inventories in both formats") {
  cli_result r = run_cli({"rules", "list", "AIC1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("75 rules") != std::string::npos);
  CHECK(r.out.find("dia-ind-fwd") != std::string::npos);

  r = run_cli({"rules", "list", "AIC0+wcont(F)+wcocont(F)", "--json"});
  REQUIRE(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["count"] == 46);
  bool saw_wcont = false;
  for (const auto& rule : j["rules"])
    if (rule["name"] == "wcont-F") {
      saw_wcont = true;
      CHECK(rule["kind"] == "continuity");
      CHECK(rule["fsym"] == "F");
      CHECK(rule["conclusion"] == "F dia a <= dia F a");
    }
  CHECK(saw_wcont);

  CHECK(run_cli({"rules", "list", "NOPE"}).code == 2);
}

TEST_CASE("generated induction documents emit, reparse and check") {
  cli_result emitted = run_cli({"gen-kind", "--k", "1"});
  REQUIRE(emitted.code == 0);
  CHECK(emitted.out.find("proof k-ind-1") != std::string::npos);

  // the emitted text is a valid document for the checker
  std::string path = temp_file("kind1.proof", emitted.out);
  CHECK(run_cli({"check", path}).code == 0);

  // `corpus emit` is the same generator
  cli_result via_corpus = run_cli({"corpus", "emit", "k-ind", "--k", "1"});
  CHECK(via_corpus.out == emitted.out);

  // --check runs the kernel instead of emitting
  cli_result checked = run_cli({"gen-kind", "--k", "2", "--check", "--json"});
  CHECK(checked.code == 0);
  nlohmann::json j = nlohmann::json::parse(checked.out);
  CHECK(j["ok"] == true);
  CHECK(j["k"] == 2);

  // --out writes the document to a file
  std::string out_path = "/tmp/aic_cli_kind0.proof";
  CHECK(run_cli({"gen-kind", "--k", "0", "--out", out_path}).code == 0);
  std::ifstream f(out_path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str().find("proof k-ind-0") != std::string::npos);
}

TEST_CASE("single corpus entries check by name with json reports") {
  cli_result r = run_cli({"corpus", "check", "tkp-fp", "--json"});
  CHECK(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == "aic/1");
  CHECK(j["proofs"].size() == 1);
  CHECK(j["proofs"][0]["name"] == "tkp-fp");
  CHECK(j["proofs"][0]["ok"] == true);

  r = run_cli({"corpus", "check", "--all", "--json"});
  CHECK(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["proofs"].size() >= 30);
  CHECK(j["ok"] == true);
}
