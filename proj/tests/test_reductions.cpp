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

#include <sstream>

#include "fixtures.hpp"

namespace shapcirc {
namespace {

using testing::kA;
using testing::kC;
using testing::q;

const auto kShapley = CoefficientFunction::shapley();
const auto kBanzhaf = CoefficientFunction::banzhaf();

TEST(EvsFromEv, RunningExample) {
  const Circuit c = testing::running_example();
  const auto p = testing::running_probabilities();
  std::size_t calls = 0;
  EXPECT_EQ(evs_from_ev(counting(backends::dd_ev(), calls), c, p, 2), q(4, 25));
  EXPECT_EQ(calls, 5u);
  EXPECT_EQ(evs_from_ev(backends::dd_ev(), c, p, 0), Rational(0));
  EXPECT_THROW(evs_from_ev(backends::dd_ev(), c, p, 5), InputError);
}

TEST(EvsFromEv, Trivial) {
  const Circuit t = parse_circuit("ddc 3\nt\n");
  const ProbabilityAssignment p({q(1, 3), q(1, 4), q(2, 7)});
  EXPECT_EQ(evs_from_ev(backends::brute_ev(), t, p, 0), q(2, 3) * q(3, 4) * q(5, 7));
  EXPECT_EQ(evs_from_ev(backends::brute_ev(), t, p, 3), q(1, 3) * q(1, 4) * q(2, 7));
}

TEST(EnvssFromEvs, RunningExample) {
  const Circuit c = testing::running_example();
  const auto p = testing::running_probabilities();
  std::size_t calls = 0;
  EXPECT_EQ(envss_from_evs(counting(backends::dd_evs(), calls), c, p, 3, 2), q(41, 125));
  EXPECT_EQ(calls, 5u);
  EXPECT_EQ(envss_from_evs(backends::dd_evs(), c, p, 1, 3), Rational(0));
  for (std::size_t k = 0; k <= 4; ++k)
    EXPECT_EQ(envss_from_evs(backends::brute_evs(), c, p, k, k), evs_from_ev(backends::brute_ev(), c, p, k));
}

TEST(EscoreFromEnvss, RunningExample) {
  const Circuit c = testing::running_example();
  const auto p = testing::running_probabilities();
  std::size_t calls = 0;
  EXPECT_EQ(escore_from_envss(counting(backends::dd_envss(), calls), c, p, kC, kShapley),
            escore_dd(c, p, kC, kShapley));
  EXPECT_EQ(calls, 2u * 4 * 4);
  EXPECT_EQ(escore_from_envss(backends::brute_envss(), c, p.with(kA, Rational(0)), kA, kShapley), Rational(0));
}

TEST(EscoreFromEnvss, VariableOutsideCircuit) {
  const Circuit c = parse_circuit("ddc 3\nv 1\nv 2\na 0 1\n");
  EXPECT_EQ(escore_from_envss(backends::brute_envss(), c, ProbabilityAssignment(3, q(1, 2)), 3, kShapley),
            Rational(0));
}

TEST(EscoreViaEv, RunningExample) {
  const Circuit c = testing::running_example();
  const auto p = testing::running_probabilities();
  for (VarId x = 1; x <= 4; ++x) {
    const Rational v = escore_via_ev(backends::dd_ev(), c, p, x, kShapley);
    EXPECT_EQ(v, escore_dd(c, p, x, kShapley));
    EXPECT_NEAR(v.get_d(), x <= 2 ? 0.076 : 0.216, 5e-4);
  }
  const ProbabilityAssignment ones(4, Rational(1));
  EXPECT_EQ(escore_via_ev(backends::brute_ev(), c, ones, kA, kShapley), brute_score(c, kA, kShapley));
}

TEST(EscoreViaEv, CallsArePolynomial) {
  const Circuit c = random_dd(4, 6, 5);
  std::size_t calls = 0;
  escore_via_ev(counting(backends::dd_ev(), calls), c, random_probabilities(2, 6), 1, kShapley);
  const std::size_t n = c.num_vars();
  EXPECT_GT(calls, 0u);
  EXPECT_LE(calls, 2 * (n + 1) * (n + 1) * (n + 1));
}

TEST(EscoreViaEv, MatchesBruteForce) {
  for (const auto& inst : testing::corpus(60, 11000))
    for (VarId x : inst.circuit.universe())
      EXPECT_EQ(escore_via_ev(backends::dd_ev(), inst.circuit, inst.probs, x, kBanzhaf),
                brute_escore(inst.circuit, inst.probs, x, kBanzhaf))
          << inst.seed;
}

TEST(EvFromEShapley, Values) {
  const Circuit c = testing::running_example();
  std::size_t calls = 0;
  EXPECT_EQ(ev_from_eshapley(counting(backends::dd_escore(kShapley), calls), c, testing::running_probabilities()),
            q(73, 125));
  EXPECT_EQ(calls, 4u);
  EXPECT_EQ(ev_from_eshapley(backends::dd_escore(kShapley), parse_circuit("ddc 2\nt\n"), ProbabilityAssignment(2)),
            Rational(1));
  EXPECT_EQ(ev_from_eshapley(backends::brute_escore(kShapley), parse_circuit("ddc 1\nv 1\n"),
                             ProbabilityAssignment({q(2, 5)})),
            q(2, 5));
}

TEST(EnvFromEBanzhaf, Values) {
  std::size_t calls = 0;
  EXPECT_EQ(env_from_ebanzhaf(counting(backends::dd_ebanzhaf(), calls), parse_circuit("ddc 1\nt\n"),
                              ProbabilityAssignment(1, q(1, 2))),
            q(3, 2));
  EXPECT_EQ(calls, 1u);
  EXPECT_EQ(env_from_ebanzhaf(backends::dd_ebanzhaf(), parse_circuit("ddc 2\nf\n"), ProbabilityAssignment(2)),
            Rational(0));
  const Circuit c = testing::running_example();
  const auto p = testing::running_probabilities();
  EXPECT_EQ(env_from_ebanzhaf(backends::dd_ebanzhaf(), c, p), env_dd(c, p));
  EXPECT_EQ(env_from_ebanzhaf_disjunction(backends::dd_ebanzhaf(), c, p), env_dd(c, p));
}

TEST(EvFromEnv, Values) {
  const Circuit c = testing::running_example();
  std::size_t calls = 0;
  EXPECT_EQ(ev_from_env(counting(backends::dd_env(), calls), c, testing::running_probabilities()), q(73, 125));
  EXPECT_EQ(calls, 5u);
  calls = 0;
  EXPECT_EQ(ev_from_env(counting(backends::brute_env(), calls), parse_circuit("ddc 1\nv 1\n"),
                        ProbabilityAssignment(1, Rational(1))),
            Rational(1));
  EXPECT_EQ(calls, 1u);
}

TEST(EvFromEnv, ProbabilityOneEliminated) {
  const Circuit c = testing::running_example();
  const auto p = testing::running_probabilities().with(kA, Rational(1)).with(kC, Rational(1));
  std::size_t calls = 0;
  EXPECT_EQ(ev_from_env(counting(backends::dd_env(), calls), c, p), ev_dd(c, p));
  EXPECT_EQ(calls, 3u);
}

TEST(BanzhafRoundTrip, Corpus) {
  for (const auto& inst : testing::corpus(100, 12000)) {
    const EnvOracle env = [](const Circuit& c, const ProbabilityAssignment& p) {
      return env_from_ebanzhaf(backends::dd_ebanzhaf(), c, p);
    };
    EXPECT_EQ(ev_from_env(env, inst.circuit, inst.probs), ev_dd(inst.circuit, inst.probs)) << inst.seed;
  }
}

TEST(Trace, RecordsCalls) {
  const Circuit c = testing::running_example();
  OracleTrace trace;
  evs_from_ev(backends::dd_ev(), c, testing::running_probabilities(), 2, &trace);
  ASSERT_EQ(trace.calls.size(), 5u);
  EXPECT_EQ(trace.calls[0].stage, "evs_from_ev");
  EXPECT_EQ(*trace.calls[0].node, Rational(1));
  EXPECT_EQ(trace.calls[0].probabilities.size(), 4u);
  EXPECT_EQ(trace.calls[0].answer, q(73, 125));
  std::ostringstream out;
  write_trace(out, trace);
  std::istringstream lines(out.str());
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  EXPECT_EQ(header, "stage\tk\tl\tnode\tanswer\tprobabilities");
  EXPECT_EQ(first, "evs_from_ev\t-\t-\t1/1\t73/125\t1=2/5,2=1/2,3=3/5,4=4/5");
}

TEST(Transforms, StayProbabilities) {
  // probabilities at the extremes still map into [0, 1]
  const Circuit c = random_dd(8, 5, 4);
  ProbabilityAssignment p({Rational(0), Rational(1), q(1, 64), q(63, 64), q(1, 2)});
  EXPECT_EQ(escore_via_ev(backends::dd_ev(), c, p, 3, kShapley), brute_escore(c, p, 3, kShapley));
  EXPECT_EQ(ev_from_env(backends::dd_env(), c, p), brute_ev(c, p));
}

}  // namespace
}  // namespace shapcirc
