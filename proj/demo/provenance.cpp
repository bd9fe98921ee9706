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

// Scores the facts of a tuple-independent database by their contribution to
// a conjunctive query. Usage: provenance DATA_DIR QUERY_FILE

#include <iostream>

#include "shapcirc/shapcirc.hpp"

int main(int argc, char** argv) {
  using namespace shapcirc;
  if (argc != 3) {
    std::cerr << "usage: " << argv[0] << " DATA_DIR QUERY_FILE\n";
    return 1;
  }
  try {
    const TidDatabase db = load_tid(argv[1]);
    const ConjunctiveQuery q = load_query(argv[2]);
    const ProvenanceDnf dnf = eval_provenance(db, q);
    const Circuit c = dnf_to_dd(dnf, db.num_facts());
    std::cout << "query probability " << to_string(ev_dd<Rational>(c, db.probabilities())) << '\n';
    const ScoreReport report = fact_escore(db, q, CoefficientFunction::shapley());
    for (const auto& [x, value] : report.scores)
      if (!is_zero(*value.exact)) std::cout << db.fact(x).id << '\t' << format_decimal(*value.exact) << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
