// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "json.hpp"

namespace setcard::cli {
namespace {

namespace fs = std::filesystem;

const std::string kData = SETCARD_TEST_DATA;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("setcard_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

TEST(Cli, UnsatVerdict) {
  const Result r = run({kData + "/merged_leaves.smt2"});
  EXPECT_EQ(r.code, kExitVerdict);
  EXPECT_EQ(r.out, "unsat\n");
}

TEST(Cli, SatWithModelFromScript) {
  const Result r = run({kData + "/membership.smt2"});
  EXPECT_EQ(r.code, kExitVerdict);
  EXPECT_EQ(r.out.rfind("sat\n(\n", 0), 0u);
  EXPECT_NE(r.out.find("  S := {"), std::string::npos);
  EXPECT_EQ(r.out.substr(r.out.size() - 2), ")\n");
}

TEST(Cli, ReadsStdin) {
  const Result r = run({"--get-model"}, "(declare-const S (Set Element)) (assert (= S emptyset)) (check-sat)");
  EXPECT_EQ(r.code, kExitVerdict);
  EXPECT_EQ(r.out, "sat\n(\n  S := {}\n)\n");
}

TEST(Cli, ParseErrorIsAnInputError) {
  const Result r = run({"-"}, "(assert\n  (member x S))");
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_EQ(r.out, "");
  EXPECT_NE(r.err.find("<stdin>:2:11: undeclared symbol"), std::string::npos) << r.err;
}

TEST(Cli, MissingFileAndBadFlags) {
  EXPECT_EQ(run({kData + "/no-such-file.smt2"}).code, kExitInputError);
  EXPECT_EQ(run({"--guess-empty-set", "maybe", kData + "/membership.smt2"}).code, kExitInputError);
  EXPECT_EQ(run({"--oracle-check", "99", kData + "/membership.smt2"}).code, kExitInputError);
  EXPECT_EQ(run({"--frobnicate"}).code, kExitInputError);
  EXPECT_EQ(run({"--help"}).code, kExitVerdict);
}

TEST(Cli, StatsJson) {
  const Result r = run({"--stats-json", kData + "/merged_leaves.smt2"});
  ASSERT_EQ(r.code, kExitVerdict);
  const std::string line = r.out.substr(r.out.find('\n') + 1);
  const auto j = nlohmann::json::parse(line);
  for (const char* key : {"verdict", "timeMs", "decisions", "maxVertices", "maxLeaves", "ruleCounts"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["verdict"], "unsat");
  EXPECT_GE(j["maxVertices"].get<int>(), 8);
  EXPECT_GE(j["maxLeaves"].get<int>(), 5);
  EXPECT_GT(j["ruleCounts"]["Merge Equality II"].get<int>(), 0);
}

TEST(Cli, StatsLines) {
  const Result r = run({"--stats", kData + "/merged_leaves.smt2"});
  EXPECT_NE(r.out.find("\n; decisions: "), std::string::npos);
  EXPECT_NE(r.out.find("\n; max-vertices: "), std::string::npos);
}

TEST(Cli, OracleCheck) {
  EXPECT_EQ(run({"--oracle-check", "4", kData + "/merged_leaves.smt2"}).out, "unsat\noracle: agree (no model ≤ 4)\n");
  const Result sat = run({"--oracle-check", "3", kData + "/chain21.smt2"});
  EXPECT_NE(sat.out.find("oracle: agree (model validates)\n"), std::string::npos);
  const Result unknown = run({"--oracle-check", "3", "--decision-limit", "1", kData + "/merged_leaves.smt2"});
  EXPECT_EQ(unknown.out, "unknown\noracle: skipped\n");
}

TEST(Cli, DumpGraph) {
  const fs::path dot = scratch("g.dot");
  const Result r = run({"--dump-graph", dot.string(), kData + "/merged_leaves.smt2"});
  EXPECT_EQ(r.code, kExitVerdict);
  std::ifstream in(dot);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "digraph G {");
}

TEST(Cli, EmptySetGuessOffAgrees) {
  EXPECT_EQ(run({"--guess-empty-set", "off", kData + "/merged_leaves.smt2"}).out, "unsat\n");
  EXPECT_EQ(run({"--guess-lower-bound", "on", kData + "/merged_leaves.smt2"}).out, "unsat\n");
}

TEST(Cli, Bench) {
  const fs::path dir = scratch("bench");
  fs::create_directories(dir);
  fs::copy_file(kData + "/membership.smt2", dir / "a.smt2", fs::copy_options::overwrite_existing);
  fs::copy_file(kData + "/merged_leaves.smt2", dir / "b.smt2", fs::copy_options::overwrite_existing);
  const Result r = run({"--bench", dir.string()});
  EXPECT_EQ(r.code, kExitVerdict);
  std::istringstream lines(r.out);
  std::string header, a, b;
  std::getline(lines, header);
  std::getline(lines, a);
  std::getline(lines, b);
  EXPECT_EQ(header.rfind("file", 0), 0u);
  EXPECT_NE(header.find("#vertices"), std::string::npos);
  EXPECT_EQ(a.rfind("a.smt2", 0), 0u);
  EXPECT_NE(a.find(" sat "), std::string::npos);
  EXPECT_EQ(b.rfind("b.smt2", 0), 0u);
  EXPECT_NE(b.find(" unsat "), std::string::npos);
}

TEST(Cli, OutputIsByteIdenticalAcrossRuns) {
  for (const char* f : {"/membership.smt2", "/merged_leaves.smt2", "/chain100.smt2"}) {
    EXPECT_EQ(run({"--get-model", kData + f}).out, run({"--get-model", kData + f}).out);
  }
}

}  // namespace
}  // namespace setcard::cli
