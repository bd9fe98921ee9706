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

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "shapcirc/circuit.hpp"
#include "shapcirc/error.hpp"
#include "shapcirc/numeric.hpp"

namespace shapcirc {

/// Independent probability p_x per variable, defining the product
/// distribution Pi_V(Z) = prod_{x in Z} p_x * prod_{x in V \ Z} (1 - p_x).
class ProbabilityAssignment {
 public:
  ProbabilityAssignment() = default;
  explicit ProbabilityAssignment(std::size_t universe_size, const Rational& value = Rational(0))
      : values_(universe_size + 1, value) {
    check(value);
  }
  // values[i] is p_{i+1}.
  explicit ProbabilityAssignment(const std::vector<Rational>& values)
      : values_(values.size() + 1) {
    for (std::size_t i = 0; i < values.size(); ++i) set(static_cast<VarId>(i + 1), values[i]);
  }

  static ProbabilityAssignment uniform(std::size_t universe_size, const Rational& value) {
    return ProbabilityAssignment(universe_size, value);
  }

  std::size_t universe_size() const { return values_.empty() ? 0 : values_.size() - 1; }

  const Rational& operator[](VarId x) const {
    if (x == 0 || x >= values_.size())
      throw InputError("no probability for variable " + std::to_string(x));
    return values_[x];
  }

  void set(VarId x, const Rational& value) {
    if (x == 0) throw InputError("variable ids start at 1");
    check(value);
    if (x >= values_.size()) values_.resize(x + 1);
    values_[x] = value;
  }

  ProbabilityAssignment with(VarId x, const Rational& value) const {
    ProbabilityAssignment copy = *this;
    copy.set(x, value);
    return copy;
  }

  // Throws InputError unless every variable of c's universe has a value.
  void require_covers(const Circuit& c) const {
    if (universe_size() < c.universe_size())
      throw InputError("probabilities cover " + std::to_string(universe_size()) +
                       " variables, circuit universe has " + std::to_string(c.universe_size()));
  }

  /// The common value if every variable of `universe` has the same
  /// probability.
  std::optional<Rational> uniform_value(const VarSet& universe) const {
    if (universe.empty()) return std::nullopt;
    const Rational& first = (*this)[universe.front()];
    for (VarId x : universe)
      if ((*this)[x] != first) return std::nullopt;
    return first;
  }

  const std::vector<Rational>& raw() const { return values_; }

  friend bool operator==(const ProbabilityAssignment&, const ProbabilityAssignment&) = default;

 private:
  static void check(const Rational& v) {
    if (sgn(v) < 0 || v > 1)
      throw InputError("probability " + to_string(v) + " is outside [0, 1]");
  }

  std::vector<Rational> values_;  // index 0 unused
};

/// Parses lines `<varId> <rational-or-decimal>`; `#` comments. Every
/// variable 1..universe_size must be given exactly once.
inline ProbabilityAssignment parse_probabilities(std::string_view text, std::size_t universe_size) {
  ProbabilityAssignment p(universe_size);
  std::vector<char> seen(universe_size + 1, 0);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string var_text, value_text, extra;
    if (!(fields >> var_text)) continue;
    if (!(fields >> value_text) || (fields >> extra))
      throw ParseError(line_no, 1, "expected '<varId> <probability>'");
    unsigned long x = 0;
    try {
      std::size_t used = 0;
      x = std::stoul(var_text, &used);
      if (used != var_text.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError(line_no, 1, "bad variable id '" + var_text + "'");
    }
    if (x == 0 || x > universe_size)
      throw ParseError(line_no, 1, "variable " + var_text + " outside universe [1, " +
                                       std::to_string(universe_size) + "]");
    if (seen[x]) throw ParseError(line_no, 1, "variable " + var_text + " given twice");
    seen[x] = 1;
    Rational v;
    try {
      v = parse_rational(value_text);
    } catch (const ParseError& e) {
      throw ParseError(line_no, 1, e.what());
    }
    if (sgn(v) < 0 || v > 1)
      throw ParseError(line_no, 1, "probability " + value_text + " outside [0, 1]");
    p.set(static_cast<VarId>(x), v);
  }
  for (std::size_t x = 1; x <= universe_size; ++x)
    if (!seen[x]) throw InputError("no probability given for variable " + std::to_string(x));
  return p;
}

/// Pi_V(Z) over the universe of `c`, Z given as a membership mask.
inline Rational coalition_probability(const VarSet& universe, const ProbabilityAssignment& p,
                                      const std::vector<char>& member) {
  Rational r = 1;
  for (VarId y : universe) {
    if (member[y]) r *= p[y];
    else r *= 1 - p[y];
    if (is_zero(r)) break;
  }
  return r;
}

}  // namespace shapcirc
