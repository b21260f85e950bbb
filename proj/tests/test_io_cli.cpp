#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "blotto/io.hpp"

using namespace blotto;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(BLOTTO_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof buf, pipe)) res.output.append(buf, n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

const char* kMedianInstance = R"({
  "num_items": 4,
  "classes": [{"bias": "-1", "count": 3}, {"bias": "1", "count": 3}],
  "unlabeled_cost": "11/10",
  "outcome": "median"
})";

}  // namespace

TEST_CASE("instance JSON round trip preserves exact values") {
  Instance inst = parse_instance_json(kMedianInstance);
  CHECK(inst.num_items == 4);
  CHECK(inst.num_classes() == 2);
  CHECK(inst.classes[0].bias.exact == Rat(-1));
  CHECK(inst.unlabeled_cost.exact == Rat(11, 10));
  CHECK(inst.outcome == Outcome::Median);
  Instance again = parse_instance_json(instance_to_json(inst));
  CHECK(again.num_items == inst.num_items);
  CHECK(again.num_classes() == inst.num_classes());
  for (int t = 0; t < inst.num_classes(); ++t) {
    CHECK(again.classes[t].bias.exact == inst.classes[t].bias.exact);
    CHECK(again.classes[t].count == inst.classes[t].count);
  }
  CHECK(again.unlabeled_cost.exact == inst.unlabeled_cost.exact);
  CHECK(again.outcome == inst.outcome);
  for (size_t i = 0; i < inst.weights.size(); ++i) {
    CHECK(again.weights[i].exact == inst.weights[i].exact);
  }
}

TEST_CASE("instance JSON rejects malformed documents") {
  CHECK_THROWS_AS(parse_instance_json("not json"), ParseError);
  CHECK_THROWS_AS(parse_instance_json("{}"), ParseError);
  CHECK_THROWS_AS(parse_instance_json(R"({"num_items": 2, "classes": [], "unlabeled_cost": 1,
                                          "outcome": "mediam"})"),
                  ParseError);
  CHECK_THROWS_AS(parse_instance_json(R"({"num_items": 2,
                                          "classes": [{"bias": "1/0", "count": 1}],
                                          "unlabeled_cost": 1, "outcome": "mean"})"),
                  ParseError);
}

TEST_CASE("arrangement text round trip") {
  Arrangement arr = parse_arrangement_text("2x0,1x1;1x0;0", 2);
  CHECK(arr.rows() == std::vector<std::vector<int>>{{2, 1}, {1, 0}, {0, 0}});
  CHECK(format_arrangement_text(arr) == "2x0,1x1;1x0;0");
  CHECK(parse_arrangement_text("0;0;3x1", 2).rows() ==
        std::vector<std::vector<int>>{{0, 0}, {0, 0}, {0, 3}});
  CHECK_THROWS_AS(parse_arrangement_text("1x0;oops", 2), ParseError);
  CHECK_THROWS_AS(parse_arrangement_text("1x5", 2), ParseError);
  CHECK_THROWS_AS(parse_arrangement_text("", 2), ParseError);
}

TEST_CASE("witness formatting") {
  DeviationWitness w{1, 0, 2, 1.5, 1.05};
  CHECK(format_witness(w) == "(1, 0, 2, -0.45)");
}

TEST_CASE("cli: check recognizes the tied construction as stable") {
  std::string path = write_temp("blotto_check.json", kMedianInstance);
  RunResult res = run_cli("check --instance " + path +
                          " --arrangement \"1x0,1x1;1x0,1x1;1x0;1x1\" --cu auto");
  CHECK(res.exit_code == 0);
  CHECK(res.output == "STABLE\n");
}

TEST_CASE("cli: check reports a witness for unstable input") {
  std::string path = write_temp("blotto_check2.json", kMedianInstance);
  RunResult res = run_cli("check --instance " + path +
                          " --arrangement \"3x0,3x1;0;0;0\" --cu auto");
  CHECK(res.exit_code == 0);
  CHECK(res.output.rfind("UNSTABLE", 0) == 0);
}

TEST_CASE("cli: enumerate finds nothing for the critical pair") {
  std::string inst = R"({"num_items": 3,
                         "classes": [{"bias": "-1", "count": 4}, {"bias": "1", "count": 1}],
                         "unlabeled_cost": 0, "outcome": "median"})";
  std::string path = write_temp("blotto_enum.json", inst);
  RunResult res = run_cli("enumerate --instance " + path + " --cu auto");
  CHECK(res.exit_code == 0);
  CHECK(res.output == "0 stable arrangements\n");
}

TEST_CASE("cli: scenario output round-trips through the parser") {
  RunResult res = run_cli("scenario no-ne-median --n 3 --m 4");
  CHECK(res.exit_code == 0);
  Instance inst = parse_instance_json(res.output);
  CHECK(inst.num_items == 4);
  CHECK(inst.classes[0].count == 2);
  CHECK(inst.classes[0].bias.exact == Rat(-1, 2));
  CHECK(inst.unlabeled_cost.exact == Rat(3, 10));
  CHECK(inst.outcome == Outcome::Median);
}

TEST_CASE("cli: construct prints arrangement and certificate") {
  RunResult res = run_cli("construct --na 5 --nb 3 --m 3 --regime many");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("3x1;2x0;3x0") != std::string::npos);
  CHECK(res.output.find("stability: certified") != std::string::npos);
}

TEST_CASE("cli: dynamics detects the crowding cycle") {
  std::string inst = R"({"num_items": 3,
                         "classes": [{"bias": "1", "count": 1}, {"bias": "-1/2", "count": 2}],
                         "unlabeled_cost": "3/10", "outcome": "median"})";
  std::string path = write_temp("blotto_dyn.json", inst);
  RunResult res = run_cli("dynamics --instance " + path +
                          " --start \"1x1;1x0;1x0\" --policy first --max-steps 20");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("cycle-detected") != std::string::npos);
}

TEST_CASE("cli: analyze reports effort and proportionality") {
  std::string inst = R"({"num_items": 2,
                         "classes": [{"bias": "-1", "count": 4}, {"bias": "1", "count": 2}],
                         "unlabeled_cost": 1, "outcome": "mean"})";
  std::string path = write_temp("blotto_analyze.json", inst);
  RunResult res = run_cli("analyze --instance " + path + " --arrangement \"4x0;2x1\"");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("misallocated effort: 6") != std::string::npos);
  CHECK(res.output.find("close to proportional: no") != std::string::npos);
}

TEST_CASE("cli: scan emits a csv map") {
  RunResult res = run_cli("scan --items 2 --outcome mean --n-max 4 --cu auto");
  CHECK(res.exit_code == 0);
  CHECK(res.output.rfind("n_a,n_b,stable_exists,num_stable_canonical\n", 0) == 0);
  CHECK(res.output.find("3,1,0,0") != std::string::npos);
}

TEST_CASE("cli: exit codes distinguish domain errors from bad input") {
  RunResult domain = run_cli("construct --na 3 --nb 2 --m 3 --regime many");
  CHECK(domain.exit_code == 1);
  CHECK(domain.output.find("PreconditionViolated") != std::string::npos);

  RunResult badflag = run_cli("scan --items 2 --no-such-flag");
  CHECK(badflag.exit_code == 2);

  RunResult missing = run_cli("check --instance /tmp/blotto_does_not_exist.json "
                              "--arrangement \"1x0\"");
  CHECK(missing.exit_code == 2);

  RunResult badsub = run_cli("frobnicate");
  CHECK(badsub.exit_code == 2);
}

TEST_CASE("cli: json output mode") {
  std::string path = write_temp("blotto_check3.json", kMedianInstance);
  RunResult res = run_cli("check --instance " + path +
                          " --arrangement \"1x0,1x1;1x0,1x1;1x0;1x1\" --cu auto --json");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"stable\":true") != std::string::npos);
}
