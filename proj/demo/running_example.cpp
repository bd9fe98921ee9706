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

// Builds a small d-D circuit in code and prints its expected value and the
// expected Shapley and Banzhaf scores of each variable.

#include <iostream>

#include "shapcirc/shapcirc.hpp"

int main() {
  using namespace shapcirc;

  // (x1 & x2) | (x3 & x4), with the disjunction written as !(!l & !r) so
  // that it is deterministic.
  CircuitBuilder b(4);
  const GateId left = b.conjunction(b.variable(1), b.variable(2));
  const GateId right = b.conjunction(b.variable(3), b.variable(4));
  const GateId both_false = b.conjunction(b.negation(left), b.negation(right));
  const GateId out = b.negation(both_false);
  const Circuit c = std::move(b).build(out);

  const ProbabilityAssignment p = parse_probabilities("1 0.4\n2 0.5\n3 0.6\n4 0.8\n", 4);

  std::cout << "ev\t" << to_string(ev_dd<Rational>(c, p)) << '\n';
  for (VarId x : c.universe()) {
    const Rational shapley = escore_dd<Rational>(c, p, x, CoefficientFunction::shapley());
    const Rational banzhaf = ebanzhaf_dd<Rational>(c, p, x);
    std::cout << x << "\tshapley " << to_string(shapley) << " (" << format_decimal(shapley) << ")\tbanzhaf "
              << to_string(banzhaf) << '\n';
  }
}
