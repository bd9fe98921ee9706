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

#pragma once

// Circuits, probabilities and a random corpus shared by the test programs.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "shapcirc/shapcirc.hpp"

namespace shapcirc::testing {

#ifdef SHAPCIRC_DATA_DIR
inline const std::string kDataDir = SHAPCIRC_DATA_DIR;
#endif

// Variables of the running example.
inline constexpr VarId kA = 1, kLowerA = 2, kC = 3, kLowerC = 4;

// !(!(A & a) & !(C & c)) over {A, a, C, c}.
inline const char* const kRunningExampleDdc =
    "ddc 4\n"
    "v 1\nv 2\na 0 1\n"
    "v 3\nv 4\na 3 4\n"
    "n 2\nn 5\na 6 7\nn 8\n";

inline Circuit running_example() { return parse_circuit(kRunningExampleDdc); }

inline ProbabilityAssignment running_probabilities() {
  return ProbabilityAssignment({Rational(2, 5), Rational(1, 2), Rational(3, 5), Rational(4, 5)});
}

inline Rational q(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

struct Instance {
  std::uint64_t seed = 0;
  Circuit circuit;
  ProbabilityAssignment probs;
  Rational common;  // a probability for the uniform variant
};

// Random d-D circuits with |V| in [1, 8] and small-denominator
// probabilities. Every fifth instance is a plain decision tree.
inline std::vector<Instance> corpus(std::size_t count = 200, std::uint64_t first_seed = 1000) {
  std::vector<Instance> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t seed = first_seed + i;
    const std::size_t n = 1 + i % 8;
    const std::size_t depth = 2 + (i / 8) % 5;
    Circuit c = i % 5 == 4 ? decision_tree_to_dd(random_decision_tree(seed, n, depth))
                           : random_dd(seed, n, depth);
    ProbabilityAssignment p = random_probabilities(seed * 7 + 1, n, 64);
    const ProbabilityAssignment shared = random_probabilities(seed * 13 + 5, 1, 16);
    out.push_back({seed, std::move(c), std::move(p), shared[1]});
  }
  return out;
}

inline std::vector<CoefficientFunction> builtin_coefficients() {
  return {CoefficientFunction::shapley(), CoefficientFunction::banzhaf(),
          CoefficientFunction::penrose_banzhaf()};
}

}  // namespace shapcirc::testing
