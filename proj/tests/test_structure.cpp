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

TEST(Structure, RunningExampleIsTightDd) {
  const StructureReport r = analyze_structure(testing::running_example());
  EXPECT_TRUE(r.decomposable);
  EXPECT_EQ(r.deterministic, Determinism::Verified);
  EXPECT_TRUE(r.smooth);
  EXPECT_TRUE(r.tight);
  EXPECT_TRUE(r.is_dd());
}

TEST(Structure, PlainDisjunctionRefuted) {
  // (A & a) | (C & c) as a plain Or
  const Circuit c = parse_circuit("ddc 4\nv 1\nv 2\na 0 1\nv 3\nv 4\na 3 4\no 2 5\n");
  const StructureReport r = analyze_structure(c);
  EXPECT_TRUE(r.decomposable);
  EXPECT_EQ(r.deterministic, Determinism::Refuted);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->gate, 6u);
  EXPECT_EQ(r.witness->true_vars, (VarSet{1, 2, 3, 4}));
  EXPECT_TRUE(c.evaluate(r.witness->true_vars));
  EXPECT_FALSE(r.is_dd());
}

TEST(Structure, WitnessSatisfiesBothInputs) {
  const Circuit c = parse_circuit("ddc 3\nv 1\nv 2\nv 3\na 1 2\no 0 3\n");
  const StructureReport r = analyze_structure(c);
  ASSERT_EQ(r.deterministic, Determinism::Refuted);
  const auto& w = *r.witness;
  const Circuit first(c.universe_size(), c.gates(), w.first_input);
  const Circuit second(c.universe_size(), c.gates(), w.second_input);
  EXPECT_TRUE(first.evaluate(w.true_vars));
  EXPECT_TRUE(second.evaluate(w.true_vars));
}

TEST(Structure, NotDecomposable) {
  const StructureReport r = analyze_structure(parse_circuit("ddc 1\nv 1\nn 0\na 0 1\n"));
  EXPECT_FALSE(r.decomposable);
  EXPECT_EQ(r.non_decomposable_gate, 2u);
}

TEST(Structure, SmoothnessAndCoverage) {
  const Circuit c = parse_circuit("ddc 3\nv 1\nv 2\nn 1\na 0 1\no 3 2\n");
  const StructureReport r = analyze_structure(c);
  EXPECT_TRUE(r.decomposable);
  EXPECT_FALSE(r.smooth);
  EXPECT_EQ(r.non_smooth_gate, 4u);
  EXPECT_FALSE(r.covers_universe);
  EXPECT_FALSE(r.tight);
}

TEST(Structure, BudgetLeavesGatesUnchecked) {
  const Circuit c = random_dd(5, 8, 5);
  const StructureReport r = analyze_structure(c, 0);
  EXPECT_EQ(r.deterministic, Determinism::Unchecked);
  EXPECT_FALSE(r.unchecked_gates.empty());
  EXPECT_EQ(analyze_structure(c, 16).deterministic, Determinism::Verified);
}

TEST(Structure, RandomCircuitsAreVerifiedDd) {
  for (const auto& inst : testing::corpus(100)) {
    const StructureReport r = analyze_structure(inst.circuit);
    EXPECT_TRUE(r.decomposable) << inst.seed;
    EXPECT_EQ(r.deterministic, Determinism::Verified) << inst.seed;
  }
}

}  // namespace
}  // namespace shapcirc
