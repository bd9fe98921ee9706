// Copyright 2026 The shapcirc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
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

#include "cli.hpp"
#include "fixtures.hpp"

namespace shapcirc {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "shapcirc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return testing::kDataDir + "/" + name; }

fs::path scratch(const std::string& name, const std::string& content) {
  const fs::path dir = fs::temp_directory_path() / "shapcirc_cli_test";
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

const std::vector<std::string> kExample = {"--circuit", data("phi_ex.ddc"), "--probs", data("phi_ex.prob")};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

TEST(Cli, Ev) {
  const Result r = run_cli(with({"ev"}, kExample));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "ev\t73/125\t0.584000000000000\n");
}

TEST(Cli, ShapleyAll) {
  const Result r = run_cli(with({"shapley", "--all"}, kExample));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "1\t19/250\t0.0760000000000000\n2\t19/250\t0.0760000000000000\n"
            "3\t27/125\t0.216000000000000\n4\t27/125\t0.216000000000000\n");
}

TEST(Cli, BanzhafAndScore) {
  EXPECT_EQ(run_cli(with({"banzhaf", "--var", "3"}, kExample)).out, "3\t114/125\t0.912000000000000\n");
  EXPECT_EQ(run_cli(with({"score", "--coeff", "penrose", "--var", "1"}, kExample)).out,
            "1\t11/125\t0.0880000000000000\n");
  const fs::path table = scratch("coeffs.tsv", "1\t0\t1\n2\t0\t1\n2\t1\t1\n3\t0\t1\n3\t1\t1\n3\t2\t1\n4\t0\t1\n4\t1\t1\n4\t2\t1\n4\t3\t1\n");
  EXPECT_EQ(run_cli(with({"score", "--coeff", "table:" + table.string(), "--var", "1"}, kExample)).out,
            "1\t12/25\t0.480000000000000\n");
}

TEST(Cli, Float) {
  const Result r = run_cli(with({"shapley", "--var", "1", "--float"}, kExample));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 4), "1\t-\t");
  EXPECT_NEAR(std::stod(r.out.substr(4)), 0.076, 1e-12);
}

TEST(Cli, MethodsAgree) {
  const auto uniform = std::vector<std::string>{"--circuit", data("phi_ex.ddc"), "--probs", data("phi_ex_uniform.prob")};
  for (const char* cmd : {"shapley", "banzhaf"}) {
    const std::string direct = run_cli(with({cmd, "--all"}, uniform)).out;
    for (const char* m : {"reduction", "equalprob", "oracle"})
      EXPECT_EQ(run_cli(with({cmd, "--all", "--method", m}, uniform)).out, direct) << cmd << ' ' << m;
  }
  const std::string ev = run_cli(with({"ev"}, uniform)).out;
  for (const char* m : {"reduction", "equalprob", "oracle"})
    EXPECT_EQ(run_cli(with({"ev", "--method", m}, uniform)).out, ev);
}

TEST(Cli, DeterministicOutput) {
  const auto args = with({"score", "--coeff", "shapley", "--all", "--method", "reduction"}, kExample);
  EXPECT_EQ(run_cli(args).out, run_cli(args).out);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
  EXPECT_EQ(run_cli(with({"ev", "--bogus"}, kExample)).code, 1);
  EXPECT_EQ(run_cli({"ev", "--circuit", data("phi_ex.ddc")}).code, 1);
  EXPECT_EQ(run_cli(with({"shapley"}, kExample)).code, 1);
  EXPECT_EQ(run_cli(with({"shapley", "--var", "1", "--all"}, kExample)).code, 1);
  EXPECT_EQ(run_cli(with({"ev", "--exact", "--float"}, kExample)).code, 1);
  EXPECT_EQ(run_cli(with({"ev", "--method", "magic"}, kExample)).code, 1);
  EXPECT_EQ(run_cli({"transform", "--circuit", data("phi_ex.ddc")}).code, 1);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run_cli({"ev", "--circuit", "/nonexistent.ddc", "--probs", data("phi_ex.prob")}).code, 2);
  const fs::path partial = scratch("partial.prob", "1 0.4\n2 0.5\n3 0.6\n");
  EXPECT_EQ(run_cli({"ev", "--circuit", data("phi_ex.ddc"), "--probs", partial.string()}).code, 2);
  const fs::path bad = scratch("bad.prob", "1 0.4\n2 1.5\n3 0.6\n4 0.1\n");
  EXPECT_EQ(run_cli({"ev", "--circuit", data("phi_ex.ddc"), "--probs", bad.string()}).code, 2);
  EXPECT_EQ(run_cli(with({"shapley", "--var", "9"}, kExample)).code, 2);
  const fs::path two = scratch("two.prob", "1 1/2\n2 1/3\n");
  const Result nd = run_cli({"ev", "--circuit", data("not_deterministic.ddc"), "--probs", two.string()});
  EXPECT_EQ(nd.code, 2);
  EXPECT_NE(nd.err.find("not deterministic"), std::string::npos);
}

TEST(Cli, MethodConflicts) {
  EXPECT_EQ(run_cli(with({"ev", "--method", "oracle", "--oracle-guard", "3"}, kExample)).code, 2);
  EXPECT_EQ(run_cli(with({"ev", "--method", "oracle", "--oracle-guard", "4"}, kExample)).code, 0);
  EXPECT_EQ(run_cli(with({"ev", "--oracle-guard", "4"}, kExample)).code, 2);
  EXPECT_EQ(run_cli(with({"shapley", "--all", "--method", "reduction", "--float"}, kExample)).code, 2);
  EXPECT_EQ(run_cli(with({"shapley", "--all", "--method", "equalprob"}, kExample)).code, 2);
  EXPECT_EQ(run_cli(with({"ev", "--trace-oracle", "/tmp/x.tsv"}, kExample)).code, 2);
}

TEST(Cli, TraceOracle) {
  const fs::path trace = fs::temp_directory_path() / "shapcirc_cli_test" / "trace.tsv";
  fs::remove(trace);
  const Result r = run_cli(with({"ev", "--method", "reduction", "--trace-oracle", trace.string()}, kExample));
  EXPECT_EQ(r.code, 0) << r.err;
  std::ifstream in(trace);
  std::string header, line;
  std::getline(in, header);
  EXPECT_EQ(header, "stage\tk\tl\tnode\tanswer\tprobabilities");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 5u);
}

TEST(Cli, Validate) {
  const Result good = run_cli({"validate", "--circuit", data("phi_ex.ddc")});
  EXPECT_EQ(good.code, 0);
  EXPECT_NE(good.out.find("deterministic\tverified\n"), std::string::npos);
  EXPECT_NE(good.out.find("tight\ttrue\n"), std::string::npos);
  const Result nd = run_cli({"validate", "--circuit", data("not_deterministic.ddc")});
  EXPECT_EQ(nd.code, 2);
  EXPECT_NE(nd.out.find("deterministic\trefuted\n"), std::string::npos);
  EXPECT_NE(nd.err.find("both true on {1,2}"), std::string::npos);
  const Result dec = run_cli({"validate", "--circuit", data("not_decomposable.ddc")});
  EXPECT_EQ(dec.code, 2);
  EXPECT_NE(dec.err.find("not decomposable"), std::string::npos);
  const fs::path broken = scratch("broken.ddc", "ddc 2\nv 3\n");
  const Result parse = run_cli({"validate", "--circuit", broken.string()});
  EXPECT_EQ(parse.code, 2);
  EXPECT_NE(parse.err.find("line 2"), std::string::npos);
  EXPECT_NE(run_cli({"validate", "--circuit", data("not_deterministic.ddc"), "--budget", "0"}).out.find("unchecked"),
            std::string::npos);
}

TEST(Cli, Transform) {
  const fs::path in = scratch("short.ddc", "ddc 3\nv 1\n");
  const Result r = run_cli({"transform", "--tighten", "--circuit", in.string()});
  EXPECT_EQ(r.code, 0);
  const Circuit t = parse_circuit(r.out);
  EXPECT_TRUE(analyze_structure(t).tight);
  EXPECT_TRUE(t.evaluate({1}));
  EXPECT_FALSE(t.evaluate({2, 3}));

  const fs::path out = fs::temp_directory_path() / "shapcirc_cli_test" / "cond.ddc";
  EXPECT_EQ(run_cli({"transform", "--condition", "1=1", "--circuit", data("phi_ex.ddc"), "--output", out.string()}).code, 0);
  std::ifstream file(out);
  std::stringstream text;
  text << file.rdbuf();
  EXPECT_TRUE(parse_circuit(text.str()).evaluate({2}));
  EXPECT_EQ(run_cli({"transform", "--condition", "1=2", "--circuit", data("phi_ex.ddc")}).code, 1);
}

TEST(Cli, OracleFixtures) {
  const Result a = run_cli({"oracle", "random-dd", "--seed", "7", "--vars", "5", "--depth", "4"});
  const Result b = run_cli({"oracle", "random-dd", "--seed", "7", "--vars", "5", "--depth", "4"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(parse_circuit(a.out).gates(), random_dd(7, 5, 4).gates());
  const Result p = run_cli({"oracle", "random-probs", "--seed", "7", "--vars", "3"});
  EXPECT_EQ(parse_probabilities(p.out, 3), random_probabilities(7, 3));
  EXPECT_EQ(run_cli({"oracle"}).code, 1);
}

TEST(Cli, Provenance) {
  const std::vector<std::string> base = {"provenance", "--data", data("students_grades"), "--query", data("q_ex.cq")};
  const Result scores = run_cli(base);
  EXPECT_EQ(scores.code, 0) << scores.err;
  EXPECT_EQ(scores.out,
            "Grades#1\t19/250\t0.0760000000000000\nGrades#3\t27/125\t0.216000000000000\n"
            "Students#1\t19/250\t0.0760000000000000\nStudents#3\t27/125\t0.216000000000000\n");
  const Result all = run_cli(with(base, {"--all"}));
  EXPECT_NE(all.out.find("Students#4\t0/1\t0.00000000000000\n"), std::string::npos);
  EXPECT_EQ(run_cli(with(base, {"--report", "prob"})).out, "prob\t73/125\t0.584000000000000\n");
  EXPECT_EQ(run_cli(with(base, {"--report", "dnf"})).out,
            "monomial\tGrades#1,Students#1\nmonomial\tGrades#3,Students#3\n");
  for (const char* m : {"reduction", "oracle"})
    EXPECT_EQ(run_cli(with(base, {"--method", m})).out, scores.out) << m;
  EXPECT_EQ(run_cli({"provenance", "--data", "/nonexistent", "--query", data("q_ex.cq")}).code, 2);
}

}  // namespace
}  // namespace shapcirc
