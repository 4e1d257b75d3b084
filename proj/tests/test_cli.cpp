#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "doctest.h"
#include "gradedsim/cli.hpp"

using namespace gradedsim;
using nlohmann::json;

namespace {

const char* kDawr = R"({
  "kind": "dawr",
  "states": ["p", "q"],
  "alphabet": ["a"],
  "accepting": ["p", "q"],
  "transitions": [
    {"from": "p", "symbol": "a", "to": "p", "reward": 2},
    {"from": "q", "symbol": "a", "to": "q", "reward": 1}
  ]
})";

const char* kLmp = R"({
  "kind": "lmp",
  "states": ["u", "v"],
  "alphabet": ["a"],
  "transitions": [
    {"from": "u", "symbol": "a", "probs": [{"to": "u", "prob": "1"}]},
    {"from": "v", "symbol": "a", "probs": [{"to": "u", "prob": "3/4"}]}
  ]
})";

const char* kMdp = R"({
  "kind": "mdp",
  "states": ["s", "t"],
  "alphabet": ["a"],
  "transitions": [
    {"from": "s", "symbol": "a", "reward": "1/2",
     "probs": [{"to": "s", "prob": "1/2"}]},
    {"from": "t", "symbol": "a", "reward": "0",
     "probs": [{"to": "s", "prob": "1/2"}]}
  ]
})";

const char* kDa = R"({
  "kind": "da",
  "states": ["p", "q"],
  "alphabet": ["a"],
  "accepting": ["p"],
  "transitions": [
    {"from": "p", "symbol": "a", "to": "p"},
    {"from": "q", "symbol": "a", "to": "q"}
  ]
})";

std::filesystem::path scratch_dir() {
  static std::filesystem::path dir = [] {
    auto path = std::filesystem::temp_directory_path() / "gradedsim-cli-tests";
    std::filesystem::create_directories(path);
    return path;
  }();
  return dir;
}

std::string file_with(const std::string& name, const std::string& text) {
  auto path = scratch_dir() / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  return path.string();
}

struct Run {
  int exit_code;
  std::string out;
  std::string err;
  json body() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return Run{code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("similarity reports grades as json and a table") {
  std::string dawr = file_with("two.dawr.json", kDawr);
  Run r = run({"similarity", dawr, "--graded", "--format", "json"});
  CHECK(r.exit_code == 0);
  json doc = r.body();
  CHECK(doc["verdict"] == "done");
  CHECK(doc["system"]["kind"] == "dawr");
  CHECK(doc["system"]["states"] == 2);
  CHECK(doc["payload"]["kind"] == "grades");
  CHECK(doc["payload"]["domain"] == "nat");
  CHECK(doc["payload"]["rows"][1][0] == 0);
  CHECK(doc["payload"]["rows"][0][1] == "inf");
  CHECK(doc.contains("elapsed_ms"));

  Run table = run({"similarity", dawr, "--graded"});
  CHECK(table.exit_code == 0);
  CHECK(table.out.find("∞") != std::string::npos);
  CHECK(table.out.find("verdict: done") != std::string::npos);

  Run plain = run({"similarity", dawr, "--format", "json"});
  CHECK(plain.exit_code == 0);
  json pairs = plain.body()["payload"]["pairs"];
  CHECK(pairs == json::parse(
                     R"([["p","p"],["p","q"],["q","p"],["q","q"]])"));
}

TEST_CASE("similarity output feeds straight back into check") {
  std::string dawr = file_with("pipe.dawr.json", kDawr);
  Run r = run({"similarity", dawr, "--graded", "--format", "json"});
  REQUIRE(r.exit_code == 0);
  std::string report = file_with("pipe.grades.json", r.out);
  Run checked = run({"check", dawr, "--graded", report, "--format", "json"});
  CHECK(checked.exit_code == 0);
  CHECK(checked.body()["verdict"] == "holds");
}

TEST_CASE("check verdicts and witness payloads") {
  std::string dawr = file_with("check.dawr.json", kDawr);
  std::string empty = file_with(
      "empty.relation.json",
      R"({"kind": "relation", "states": ["p", "q"], "pairs": []})");
  Run ok = run({"check", dawr, "--relation", empty, "--format", "json"});
  CHECK(ok.exit_code == 0);
  CHECK(ok.body()["verdict"] == "holds");

  std::string bad = file_with(
      "bad.grades.json",
      R"({"kind": "grades", "domain": "nat", "states": ["p", "q"],
          "rows": [[0, 0], ["inf", 0]]})");
  Run fails = run({"check", dawr, "--graded", bad, "--format", "json"});
  CHECK(fails.exit_code == 1);
  json doc = fails.body();
  CHECK(doc["verdict"] == "fails");
  CHECK(doc["payload"]["kind"] == "witness");
  CHECK(doc["payload"]["clause"] == "successor");
  CHECK(doc["payload"]["pair"] == json::parse(R"(["p","q"])"));

  Run neither = run({"check", dawr});
  CHECK(neither.exit_code == 2);
  CHECK(neither.err.find("exactly one") != std::string::npos);
}

TEST_CASE("metric documents drive lmp checks") {
  std::string lmp = file_with("check.lmp.json", kLmp);
  std::string discrete = file_with(
      "discrete.metric.json",
      R"({"kind": "metric", "states": ["u", "v"],
          "rows": [["0/1", "1/1"], ["1/1", "0/1"]]})");
  Run ok = run({"check", lmp, "--relation", discrete, "--format", "json"});
  CHECK(ok.exit_code == 0);

  std::string zero = file_with(
      "zero.metric.json",
      R"({"kind": "metric", "states": ["u", "v"],
          "rows": [["0/1", "0/1"], ["0/1", "0/1"]]})");
  Run fails = run({"check", lmp, "--relation", zero, "--format", "json"});
  CHECK(fails.exit_code == 1);
  CHECK(fails.body()["payload"]["clause"] == "successor");
}

TEST_CASE("collapse and closure transform documents") {
  std::string dawr = file_with("collapse.dawr.json", kDawr);
  std::string grades = file_with(
      "collapse.grades.json",
      R"({"kind": "grades", "domain": "nat", "states": ["p", "q"],
          "rows": [[0, "inf"], [3, 0]]})");
  Run collapsed = run({"collapse", dawr, "--graded", grades,
                       "--format", "json"});
  CHECK(collapsed.exit_code == 0);
  CHECK(collapsed.body()["payload"]["pairs"] ==
        json::parse(R"([["p","p"],["q","p"],["q","q"]])"));

  std::string chain = file_with(
      "chain.grades.json",
      R"({"kind": "grades", "domain": "nat", "states": ["a", "b", "c"],
          "rows": [[0, 1, "inf"], ["inf", 0, 2], ["inf", "inf", 0]]})");
  Run closed = run({"closure", "--graded", chain, "--format", "json"});
  CHECK(closed.exit_code == 0);
  CHECK(closed.body()["payload"]["rows"][0][2] == 3);
}

TEST_CASE("galois maps round-trip through documents") {
  std::string metric = file_with(
      "galois.metric.json",
      R"({"kind": "metric", "states": ["x", "y"],
          "rows": [["0/1", "1/2"], ["1/2", "0/1"]]})");
  Run embedded = run({"galois", "R", metric, "--format", "json"});
  CHECK(embedded.exit_code == 0);
  json doc = embedded.body();
  CHECK(doc["payload"]["kind"] == "grades");
  CHECK(doc["payload"]["domain"] == "unit_interval");
  CHECK(doc["payload"]["rows"][0][1] == "1/2");

  std::string grades = file_with("galois.grades.json", embedded.out);
  Run back = run({"galois", "L", grades, "--format", "json"});
  CHECK(back.exit_code == 0);
  CHECK(back.body()["payload"]["kind"] == "metric");
  CHECK(back.body()["payload"]["rows"][0][1] == "1/2");
}

TEST_CASE("glue validates and reports failures") {
  std::string dawr = file_with("glue.dawr.json", kDawr);
  std::string diag = file_with(
      "diag.grades.json",
      R"({"kind": "grades", "domain": "nat", "states": ["p", "q"],
          "rows": [[0, "inf"], ["inf", 0]]})");
  Run ok = run({"glue", dawr, "--graded", diag, "--format", "json"});
  CHECK(ok.exit_code == 0);
  json doc = ok.body();
  CHECK(doc["verdict"] == "holds");
  CHECK(doc["payload"]["kind"] == "glued");
  CHECK(doc["payload"]["graded"]["kind"] == "grades");
  CHECK(doc["payload"]["ungraded"]["kind"] == "relation");

  std::string empty = file_with(
      "glue.empty.relation.json",
      R"({"kind": "relation", "states": ["p", "q"], "pairs": []})");
  Run fails = run({"glue", dawr, "--graded", diag, "--ungraded", empty,
                   "--format", "json"});
  CHECK(fails.exit_code == 1);
  CHECK(fails.body()["verdict"] == "fails");
  CHECK(fails.body()["payload"]["kind"] == "failure");
  CHECK(fails.body()["payload"]["detail"].get<std::string>().find(
            "containment") != std::string::npos);
}

TEST_CASE("lang-check agrees on the loop pair") {
  std::string dawr = file_with("lang.dawr.json", kDawr);
  Run r = run({"lang-check", dawr, "--format", "json"});
  CHECK(r.exit_code == 0);
  CHECK(r.body()["verdict"] == "holds");
}

TEST_CASE("corpus reports per-seed results and honors the env seed") {
  std::string previous;
  if (const char* env = std::getenv("GRADEDSIM_SEED")) previous = env;
  unsetenv("GRADEDSIM_SEED");

  Run r = run({"corpus", "--kind", "lmp", "--count", "2", "--seed", "5",
               "--format", "json"});
  CHECK(r.exit_code == 0);
  json doc = r.body();
  CHECK(doc["verdict"] == "holds");
  CHECK(doc["payload"]["system_kind"] == "lmp");
  CHECK(doc["payload"]["passed"] == 2);
  CHECK(doc["payload"]["total"] == 2);
  CHECK(doc["payload"]["results"][0]["seed"] == 5);
  CHECK(doc["payload"]["results"][1]["seed"] == 6);

  setenv("GRADEDSIM_SEED", "99", 1);
  Run seeded = run({"corpus", "--kind", "da", "--count", "1",
                    "--format", "json"});
  unsetenv("GRADEDSIM_SEED");
  if (!previous.empty()) setenv("GRADEDSIM_SEED", previous.c_str(), 1);
  CHECK(seeded.exit_code == 0);
  CHECK(seeded.body()["payload"]["results"][0]["seed"] == 99);
}

TEST_CASE("caps surface as their own verdict and exit code") {
  std::string lmp = file_with("cap.lmp.json", kLmp);
  Run r = run({"similarity", lmp, "--max-iter", "1", "--format", "json"});
  CHECK(r.exit_code == 3);
  CHECK(r.body()["verdict"] == "cap");
}

TEST_CASE("quiet mode suppresses output but keeps exit codes") {
  std::string dawr = file_with("quiet.dawr.json", kDawr);
  std::string bad = file_with(
      "quiet.grades.json",
      R"({"kind": "grades", "domain": "nat", "states": ["p", "q"],
          "rows": [[0, 0], ["inf", 0]]})");
  Run r = run({"check", dawr, "--graded", bad, "--quiet"});
  CHECK(r.exit_code == 1);
  CHECK(r.out.empty());
}

TEST_CASE("usage and input errors exit with code 2") {
  Run nothing = run({});
  CHECK(nothing.exit_code == 2);
  CHECK(nothing.err.find("similarity") != std::string::npos);

  Run help = run({"--help"});
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("similarity") != std::string::npos);

  Run unknown = run({"frobnicate"});
  CHECK(unknown.exit_code == 2);

  Run missing = run({"similarity", (scratch_dir() / "absent.json").string()});
  CHECK(missing.exit_code == 2);
  CHECK(missing.err.find("cannot read file") != std::string::npos);

  std::string garbage = file_with("garbage.json", "{ not json");
  Run bad = run({"similarity", garbage});
  CHECK(bad.exit_code == 2);

  std::string da = file_with("plain.da.json", kDa);
  Run graded_da = run({"similarity", da, "--graded"});
  CHECK(graded_da.exit_code == 2);
  CHECK(graded_da.err.find("attach rewards") != std::string::npos);

  std::string mdp = file_with("plain.mdp.json", kMdp);
  Run graded_mdp = run({"similarity", mdp, "--graded"});
  CHECK(graded_mdp.exit_code == 2);
  CHECK(graded_mdp.err.find("check-only") != std::string::npos);

  std::string wrong_states = file_with(
      "wrong.relation.json",
      R"({"kind": "relation", "states": ["a", "b"], "pairs": []})");
  std::string dawr = file_with("wrong.dawr.json", kDawr);
  Run mismatched = run({"check", dawr, "--relation", wrong_states});
  CHECK(mismatched.exit_code == 2);
  CHECK(mismatched.err.find("do not match") != std::string::npos);
}
