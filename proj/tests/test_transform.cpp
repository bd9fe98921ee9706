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

#include "fixtures.hpp"

namespace shapcirc {
namespace {

using testing::kA;
using testing::kC;
using testing::kLowerA;
using testing::kLowerC;

// Same truth value on every subset of the universe of `a`.
void expect_equivalent(const Circuit& a, const Circuit& b, VarId forced = 0, bool forced_value = false) {
  const VarSet& v = a.universe();
  ASSERT_LE(v.size(), 16u);
  std::vector<char> member(std::max(a.universe_size(), b.universe_size()) + 1, 0);
  for (std::size_t mask = 0; mask < (std::size_t{1} << v.size()); ++mask) {
    for (std::size_t i = 0; i < v.size(); ++i) member[v[i]] = (mask >> i) & 1;
    std::vector<char> other = member;
    if (forced != 0) other[forced] = forced_value;
    ASSERT_EQ(a.evaluate_mask(member), b.evaluate_mask(other)) << "mask " << mask;
  }
}

TEST(Tighten, RunningExampleAlreadyTight) {
  const Circuit c = testing::running_example();
  const Circuit t = tighten(c);
  EXPECT_EQ(t.num_gates(), c.num_gates());
  EXPECT_TRUE(analyze_structure(t).tight);
  expect_equivalent(c, t);
}

TEST(Tighten, PadsOutputWithMissingVariables) {
  const Circuit c = parse_circuit("ddc 2\nv 1\n");
  const Circuit t = tighten(c);
  EXPECT_EQ(t.vars(), (VarSet{1, 2}));
  EXPECT_FALSE(t.evaluate({2}));
  EXPECT_TRUE(t.evaluate({1, 2}));
  EXPECT_TRUE(analyze_structure(t).tight);
}

TEST(Tighten, SmoothsDisjunctionBranches) {
  // (1 & 2) | (!1 & 3): deterministic, branches miss 3 and 2 respectively
  const Circuit c = parse_circuit("ddc 3\nv 1\nv 2\na 0 1\nn 0\nv 3\na 3 4\no 2 5\n");
  const Circuit t = tighten(c);
  const StructureReport r = analyze_structure(t);
  EXPECT_TRUE(r.tight);
  EXPECT_TRUE(r.decomposable);
  EXPECT_EQ(r.deterministic, Determinism::Verified);
  expect_equivalent(c, t);
}

TEST(Tighten, BinarizesWideGates) {
  const Circuit c = parse_circuit("ddc 4\nv 1\nv 2\nv 3\nv 4\na 0 1 2 3\n");
  const Circuit t = tighten(c);
  EXPECT_TRUE(analyze_structure(t).binary);
  expect_equivalent(c, t);
}

TEST(Tighten, RejectsNonDecomposable) {
  EXPECT_THROW(tighten(parse_circuit("ddc 1\nv 1\nn 0\na 0 1\n")), StructureError);
}

TEST(Tighten, RandomCorpusEquivalentTightAndBounded) {
  for (const auto& inst : testing::corpus(200)) {
    const Circuit& c = inst.circuit;
    const Circuit t = tighten(c);
    const StructureReport r = analyze_structure(t);
    EXPECT_TRUE(r.tight) << inst.seed;
    EXPECT_TRUE(r.decomposable) << inst.seed;
    EXPECT_EQ(r.deterministic, Determinism::Verified) << inst.seed;
    EXPECT_LE(t.size(), 9 * std::max<std::size_t>(c.size(), 1) * std::max<std::size_t>(c.num_vars(), 1))
        << inst.seed;
    expect_equivalent(c, t);
  }
}

TEST(Tighten, LargerUniverses) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Circuit c = random_dd(seed, 9 + seed % 2, 7);
    expect_equivalent(c, tighten(c));
  }
}

TEST(Condition, RunningExample) {
  const Circuit c = testing::running_example();
  const Circuit pos = condition(c, kA, true);
  const Circuit neg = condition(c, kA, false);
  EXPECT_TRUE(pos.evaluate({kLowerA}));
  EXPECT_FALSE(neg.evaluate({kLowerA, kC}));
  EXPECT_TRUE(neg.evaluate({kC, kLowerC}));
  EXPECT_EQ(pos.universe(), (VarSet{2, 3, 4}));
  EXPECT_FALSE(pos.in_universe(kA));
  EXPECT_EQ(pos.num_gates(), c.num_gates());
}

TEST(Condition, ConstantTrue) {
  const Circuit c = condition(parse_circuit("ddc 2\nt\n"), 1, false);
  EXPECT_EQ(c.universe(), (VarSet{2}));
  EXPECT_TRUE(c.evaluate({}));
}

TEST(Condition, SemanticsOnCorpus) {
  for (const auto& inst : testing::corpus(60)) {
    const Circuit& c = inst.circuit;
    for (VarId x : c.universe())
      for (bool b : {false, true}) expect_equivalent(condition(c, x, b), c, x, b);
  }
}

TEST(Condition, KeepsTightnessOverRemainingVariables) {
  const Circuit t = tighten(random_dd(3, 6, 5));
  for (VarId x : t.universe()) {
    const StructureReport r = analyze_structure(condition(t, x, true));
    EXPECT_TRUE(r.smooth);
    EXPECT_TRUE(r.decomposable);
  }
}

TEST(Condition, RejectsUnknownVariable) {
  const Circuit c = testing::running_example();
  EXPECT_THROW(condition(c, 5, true), InputError);
  EXPECT_THROW(condition(condition(c, 1, true), 1, false), InputError);
}

TEST(FreshVariable, Conjoin) {
  const Circuit c = testing::running_example();
  const Circuit d = conjoin_fresh_variable(c, 5);
  EXPECT_EQ(d.num_vars(), c.num_vars() + 1);
  EXPECT_EQ(d.num_gates(), c.num_gates() + 2);
  EXPECT_TRUE(d.evaluate({kA, kLowerA, 5}));
  EXPECT_FALSE(d.evaluate({kA, kLowerA}));
  EXPECT_TRUE(analyze_structure(d).decomposable);
  EXPECT_THROW(conjoin_fresh_variable(c, 3), InputError);

  const Circuit t = conjoin_fresh_variable(parse_circuit("ddc 1\nt\n"), 2);
  EXPECT_TRUE(t.evaluate({2}));
  EXPECT_FALSE(t.evaluate({1}));
}

TEST(FreshVariable, Disjoin) {
  const Circuit c = testing::running_example();
  const Circuit d = disjoin_fresh_variable(c, 5);
  EXPECT_TRUE(d.evaluate({5}));
  EXPECT_TRUE(d.evaluate({kC, kLowerC}));
  EXPECT_FALSE(d.evaluate({kA, kC}));
  EXPECT_TRUE(analyze_structure(d).is_dd());
}

TEST(FreshVariable, ReusesAbsentSlot) {
  const Circuit c = condition(testing::running_example(), 2, true);
  const Circuit d = conjoin_fresh_variable(c, 2);
  EXPECT_EQ(d.universe(), (VarSet{1, 2, 3, 4}));
}

}  // namespace
}  // namespace shapcirc
