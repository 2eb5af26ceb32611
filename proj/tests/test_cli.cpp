#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <iterator>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int status;
  std::string out;
};

Run cli(const std::string& args) {
  std::string cmd = std::string(METAB_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t k = fread(buf, 1, sizeof buf, p)) out.append(buf, k);
  int raw = pclose(p);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "metab_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("check group on the inverse pair") {
  auto r = cli("check group examples_corpus/inverse_pair.json");
  CHECK(r.status == 0);
  auto j = json::parse(r.out);
  CHECK(j["verdict"] == "yes");
  CHECK(j["witness"]["word"] == "1 2");
  CHECK(j["witness"]["subset"] == json::array({1, 2}));
}

TEST_CASE("check group on one-way steps is refuted at the all-ones point") {
  auto r = cli("check group examples_corpus/one_way.json");
  CHECK(r.status == 1);
  auto j = json::parse(r.out);
  CHECK(j["verdict"] == "no");
  auto ref = j["certificate"]["refutations"][0];
  CHECK(ref["point"] == json::array({"1"}));
  CHECK_FALSE(ref.contains("lambda"));

  auto full = json::parse(cli("check group examples_corpus/one_way.json --certificate").out);
  CHECK(full["certificate"]["refutations"][0].contains("lambda"));
  CHECK(full["certificate"]["refutations"][0].contains("rows"));
}

TEST_CASE("graph of the figure word") {
  auto r = cli("graph word examples_corpus/fig2.json --word \"1 2 2 3 3 1 3\"");
  CHECK(r.status == 0);
  auto j = json::parse(r.out);
  std::multiset<std::pair<std::vector<long>, int>> edges, expected{
      {{0, 0}, 1}, {{-2, 3}, 2}, {{0, 3}, 2}, {{2, 3}, 3}, {{2, 1}, 3}, {{2, -1}, 1}, {{0, 2}, 3}};
  for (const auto& e : j["edges"]) edges.insert({e["s"].get<std::vector<long>>(), e["label"].get<int>()});
  CHECK(edges == expected);
}

TEST_CASE("verify accepts its own witness and rejects a tampered one") {
  auto verdict = cli("check group examples_corpus/yes_three_cycle.json");
  REQUIRE(verdict.status == 0);
  auto path = scratch("three_cycle_verdict.json");
  write(path, verdict.out);
  auto ok = cli("verify " + path.string() + " examples_corpus/yes_three_cycle.json");
  CHECK(ok.status == 0);
  CHECK(json::parse(ok.out)["valid"] == true);

  auto j = json::parse(verdict.out);
  json bad = {{"word", "1"}, {"subset", j["witness"]["subset"]}};
  auto bad_path = scratch("three_cycle_bad.json");
  write(bad_path, bad.dump());
  auto rejected = cli("verify " + bad_path.string() + " examples_corpus/yes_three_cycle.json");
  CHECK(rejected.status == 1);
  CHECK(json::parse(rejected.out)["valid"] == false);
}

TEST_CASE("euler closure of disjoint loops") {
  auto r = cli("euler-close tests/golden/disjoint_loops.graph.json");
  CHECK(r.status == 0);
  auto j = json::parse(r.out);
  CHECK(j["N"] == 2);
  CHECK(j["translations"].size() == 5);
}

TEST_CASE("graph analysis report") {
  auto j = json::parse(cli("graph analyze tests/golden/disjoint_loops.graph.json").out);
  CHECK(j["symmetric"] == true);
  CHECK(j["connected"] == false);
  CHECK(j["face_accessible"] == true);
  CHECK(j["edges"] == 4);
}

TEST_CASE("exit codes for errors") {
  CHECK(cli("check").status == 64);
  CHECK(cli("check inverse examples_corpus/inverse_pair.json").status == 64);
  CHECK(cli("check group does/not/exist.json").status == 66);
  auto broken = scratch("broken.json");
  write(broken, "{\"module\": ");
  CHECK(cli("check group " + broken.string()).status == 65);
  CHECK(cli("check group examples_corpus/fig2.json").status == 67);
  CHECK(cli("check group examples_corpus/inverse_pair.json --samples 0 --budget-degree 0 --timeout 5")
            .status == 0);
}

TEST_CASE("inverse problem through the command line") {
  auto r = cli("check inverse examples_corpus/inverse_pair.json --target 1");
  CHECK(r.status == 0);
  CHECK(json::parse(r.out)["verdict"] == "yes");
}

TEST_CASE("outputs match the golden files byte for byte") {
  auto read = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const std::vector<std::pair<std::string, std::string>> cases{
      {"check group examples_corpus/inverse_pair.json", "check_inverse_pair.json"},
      {"graph word examples_corpus/fig2.json --word \"1 2 2 3 3 1 3\"", "fig2_word.graph.json"},
      {"check group examples_corpus/one_way.json --certificate", "check_one_way.json"},
      {"euler-close tests/golden/disjoint_loops.graph.json", "disjoint_loops.closure.json"},
  };
  for (const auto& [args, golden] : cases) {
    CAPTURE(args);
    CHECK(cli(args).out == read("tests/golden/" + golden));
  }
  auto dot = scratch("fig2_word.dot");
  cli("graph word examples_corpus/fig2.json --word \"1 2 2 3 3 1 3\" --dot " + dot.string());
  CHECK(read(dot) == read("tests/golden/fig2_word.dot"));
}
