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

// Boolean circuits over an explicitly sized variable universe, and the DDC v1
// text format.
//
//   ddc <universe_size>
//   t | f | v <var> | n <gate> | a <gate> <gate> ... | o <gate> <gate> ...
//
// One gate per non-comment line, numbered from 0 in file order; a gate may
// only reference earlier gates and the last gate is the output. `#` starts a
// comment.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shapcirc/error.hpp"

namespace shapcirc {

// Variables are numbered 1..universe_size.
using VarId = std::uint32_t;
// Index of a gate in a circuit's topologically ordered gate list.
using GateId = std::uint32_t;

enum class GateKind : std::uint8_t { True, False, Var, Not, And, Or };

struct Gate {
  GateKind kind = GateKind::False;
  VarId var = 0;                // Var gates only
  std::vector<GateId> inputs;   // Not: 1, And/Or: >= 2

  static Gate constant(bool value) { return {value ? GateKind::True : GateKind::False, 0, {}}; }
  static Gate variable(VarId x) { return {GateKind::Var, x, {}}; }
  static Gate negation(GateId g) { return {GateKind::Not, 0, {g}}; }
  static Gate conjunction(std::vector<GateId> in) { return {GateKind::And, 0, std::move(in)}; }
  static Gate disjunction(std::vector<GateId> in) { return {GateKind::Or, 0, std::move(in)}; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

// Sorted, duplicate-free variable set.
using VarSet = std::vector<VarId>;

inline VarSet var_union(const VarSet& a, const VarSet& b) {
  VarSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VarSet var_difference(const VarSet& a, const VarSet& b) {
  VarSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool var_disjoint(const VarSet& a, const VarSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) ++i; else ++j;
  }
  return true;
}

inline bool var_contains(const VarSet& s, VarId x) {
  return std::binary_search(s.begin(), s.end(), x);
}

/// An immutable Boolean circuit. The universe is {1..universe_size} minus the
/// variables marked absent (conditioning removes a variable from the universe
/// without renumbering the others).
class Circuit {
 public:
  Circuit(std::size_t universe_size, std::vector<Gate> gates,
          std::optional<GateId> output = std::nullopt, const VarSet& absent = {})
      : universe_size_(universe_size), gates_(std::move(gates)) {
    if (gates_.empty()) throw InputError("circuit has no gates");
    output_ = output.value_or(static_cast<GateId>(gates_.size() - 1));
    if (output_ >= gates_.size()) throw InputError("output gate out of range");

    active_.assign(universe_size_ + 1, 1);
    active_[0] = 0;
    for (VarId x : absent) {
      if (x == 0 || x > universe_size_) throw InputError("absent variable out of range");
      active_[x] = 0;
    }

    vars_.resize(gates_.size());
    for (std::size_t i = 0; i < gates_.size(); ++i) {
      const Gate& g = gates_[i];
      for (GateId in : g.inputs)
        if (in >= i)
          throw InputError("gate " + std::to_string(i) + " references gate " +
                           std::to_string(in) + " which is not earlier");
      switch (g.kind) {
        case GateKind::True:
        case GateKind::False:
          if (!g.inputs.empty()) throw InputError("constant gate with inputs");
          break;
        case GateKind::Var:
          if (g.var == 0 || g.var > universe_size_)
            throw InputError("variable " + std::to_string(g.var) + " out of range [1, " +
                             std::to_string(universe_size_) + "]");
          if (!active_[g.var])
            throw InputError("variable " + std::to_string(g.var) + " is absent from the universe");
          vars_[i] = {g.var};
          break;
        case GateKind::Not:
          if (g.inputs.size() != 1) throw InputError("negation gate needs exactly one input");
          vars_[i] = vars_[g.inputs[0]];
          break;
        case GateKind::And:
        case GateKind::Or:
          if (g.inputs.size() < 2)
            throw InputError("gate " + std::to_string(i) + " has fan-in < 2");
          for (GateId in : g.inputs) vars_[i] = var_union(vars_[i], vars_[in]);
          break;
      }
      wires_ += g.inputs.size();
    }

    reachable_.assign(gates_.size(), 0);
    reachable_[output_] = 1;
    for (std::size_t i = gates_.size(); i-- > 0;)
      if (reachable_[i])
        for (GateId in : gates_[i].inputs) reachable_[in] = 1;

    for (VarId x = 1; x <= universe_size_; ++x)
      if (active_[x]) universe_.push_back(x);
  }

  std::size_t universe_size() const { return universe_size_; }
  // Variables of the universe V, ascending.
  const VarSet& universe() const { return universe_; }
  std::size_t num_vars() const { return universe_.size(); }
  bool in_universe(VarId x) const { return x <= universe_size_ && active_[x]; }
  VarSet absent() const {
    VarSet out;
    for (VarId x = 1; x <= universe_size_; ++x)
      if (!active_[x]) out.push_back(x);
    return out;
  }

  const std::vector<Gate>& gates() const { return gates_; }
  const Gate& gate(GateId g) const { return gates_[g]; }
  std::size_t num_gates() const { return gates_.size(); }
  GateId output() const { return output_; }
  bool reachable(GateId g) const { return reachable_[g] != 0; }

  // vars(g), cached.
  const VarSet& vars(GateId g) const { return vars_[g]; }
  // vars(C) = vars(output).
  const VarSet& vars() const { return vars_[output_]; }

  // |C|: number of wires.
  std::size_t size() const { return wires_; }

  /// phi(Z) with Z given as a membership mask indexed by VarId.
  bool evaluate_mask(const std::vector<char>& member) const {
    std::vector<char> value(gates_.size(), 0);
    for (std::size_t i = 0; i <= output_; ++i) {
      if (!reachable_[i]) continue;
      const Gate& g = gates_[i];
      switch (g.kind) {
        case GateKind::True: value[i] = 1; break;
        case GateKind::False: value[i] = 0; break;
        case GateKind::Var: value[i] = g.var < member.size() && member[g.var]; break;
        case GateKind::Not: value[i] = !value[g.inputs[0]]; break;
        case GateKind::And:
          value[i] = std::all_of(g.inputs.begin(), g.inputs.end(),
                                 [&](GateId in) { return value[in] != 0; });
          break;
        case GateKind::Or:
          value[i] = std::any_of(g.inputs.begin(), g.inputs.end(),
                                 [&](GateId in) { return value[in] != 0; });
          break;
      }
    }
    return value[output_] != 0;
  }

  /// phi(Z) for the set Z of true variables.
  bool evaluate(std::span<const VarId> true_vars) const {
    std::vector<char> member(universe_size_ + 1, 0);
    for (VarId x : true_vars) {
      if (x == 0 || x > universe_size_) throw InputError("variable out of range in assignment");
      member[x] = 1;
    }
    return evaluate_mask(member);
  }
  bool evaluate(std::initializer_list<VarId> true_vars) const {
    return evaluate(std::span<const VarId>(true_vars.begin(), true_vars.size()));
  }

 private:
  std::size_t universe_size_;
  std::vector<Gate> gates_;
  GateId output_ = 0;
  std::vector<char> active_;
  VarSet universe_;
  std::vector<VarSet> vars_;
  std::vector<char> reachable_;
  std::size_t wires_ = 0;
};

/// Incremental construction of a circuit. Variable and constant gates are
/// shared: asking twice for the same leaf returns the same gate.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(std::size_t universe_size) : universe_size_(universe_size) {}

  GateId constant(bool value) {
    auto& slot = value ? true_ : false_;
    if (!slot) slot = push(Gate::constant(value));
    return *slot;
  }
  GateId variable(VarId x) {
    auto it = var_gates_.find(x);
    if (it != var_gates_.end()) return it->second;
    GateId g = push(Gate::variable(x));
    var_gates_.emplace(x, g);
    return g;
  }
  GateId negation(GateId g) { return push(Gate::negation(g)); }
  GateId conjunction(GateId a, GateId b) { return push(Gate::conjunction({a, b})); }
  GateId disjunction(GateId a, GateId b) { return push(Gate::disjunction({a, b})); }
  GateId add(Gate g) { return push(std::move(g)); }

  std::size_t num_gates() const { return gates_.size(); }

  Circuit build(GateId output, const VarSet& absent = {}) && {
    return Circuit(universe_size_, std::move(gates_), output, absent);
  }

 private:
  GateId push(Gate g) {
    gates_.push_back(std::move(g));
    return static_cast<GateId>(gates_.size() - 1);
  }

  std::size_t universe_size_;
  std::vector<Gate> gates_;
  std::optional<GateId> true_, false_;
  std::map<VarId, GateId> var_gates_;
};

struct ParseOptions {
  // Replace fan-in-1 And/Or gates by their single input. When false such
  // gates are a parse error.
  bool collapse_unary = true;
};

namespace detail {

struct LineTokens {
  std::vector<std::string_view> tokens;
  std::vector<std::size_t> columns;  // 1-based
};

inline LineTokens tokenize(std::string_view line) {
  LineTokens out;
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.tokens.push_back(line.substr(start, i - start));
    out.columns.push_back(start + 1);
  }
  return out;
}

inline std::uint64_t parse_index(std::string_view tok, std::size_t line, std::size_t col) {
  if (tok.empty() || tok.size() > 18 ||
      !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError(line, col, "expected a non-negative integer, got '" + std::string(tok) + "'");
  std::uint64_t v = 0;
  for (char c : tok) v = v * 10 + static_cast<std::uint64_t>(c - '0');
  return v;
}

}  // namespace detail

/// Parses DDC v1 text. The universe size comes from the header; the output is
/// the last gate.
inline Circuit parse_circuit(std::string_view text, const ParseOptions& options = {}) {
  std::optional<std::size_t> universe;
  std::vector<Gate> gates;
  // file gate index -> gate index after collapsing unary gates
  std::vector<GateId> remap;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    detail::LineTokens lt = detail::tokenize(line);
    if (lt.tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto& tok = lt.tokens;
    const auto& col = lt.columns;

    if (!universe) {
      if (tok[0] != "ddc" || tok.size() != 2)
        throw ParseError(line_no, col[0], "expected header 'ddc <universe_size>'");
      universe = detail::parse_index(tok[1], line_no, col[1]);
      continue;
    }

    const std::size_t index = remap.size();
    auto gate_ref = [&](std::size_t t) -> GateId {
      std::uint64_t g = detail::parse_index(tok[t], line_no, col[t]);
      if (g >= index)
        throw ParseError(line_no, col[t],
                         "gate " + std::to_string(index) + " references gate " +
                             std::to_string(g) + " which is not earlier");
      return remap[g];
    };
    auto arity = [&](std::size_t n) {
      if (tok.size() != n + 1)
        throw ParseError(line_no, col[0],
                         "'" + std::string(tok[0]) + "' expects " + std::to_string(n) +
                             " argument(s)");
    };

    if (tok[0] == "t" || tok[0] == "f") {
      arity(0);
      gates.push_back(Gate::constant(tok[0] == "t"));
      remap.push_back(static_cast<GateId>(gates.size() - 1));
    } else if (tok[0] == "v") {
      arity(1);
      std::uint64_t x = detail::parse_index(tok[1], line_no, col[1]);
      if (x == 0 || x > *universe)
        throw ParseError(line_no, col[1],
                         "variable index " + std::to_string(x) + " out of range [1, " +
                             std::to_string(*universe) + "]");
      gates.push_back(Gate::variable(static_cast<VarId>(x)));
      remap.push_back(static_cast<GateId>(gates.size() - 1));
    } else if (tok[0] == "n") {
      arity(1);
      gates.push_back(Gate::negation(gate_ref(1)));
      remap.push_back(static_cast<GateId>(gates.size() - 1));
    } else if (tok[0] == "a" || tok[0] == "o") {
      if (tok.size() < 2)
        throw ParseError(line_no, col[0], "'" + std::string(tok[0]) + "' needs at least one input");
      std::vector<GateId> in;
      for (std::size_t t = 1; t < tok.size(); ++t) in.push_back(gate_ref(t));
      if (in.size() == 1) {
        if (!options.collapse_unary)
          throw ParseError(line_no, col[0], "fan-in 1 on '" + std::string(tok[0]) + "' gate");
        remap.push_back(in[0]);
        continue;
      }
      gates.push_back(tok[0] == "a" ? Gate::conjunction(std::move(in))
                                    : Gate::disjunction(std::move(in)));
      remap.push_back(static_cast<GateId>(gates.size() - 1));
    } else {
      throw ParseError(line_no, col[0], "unknown gate kind '" + std::string(tok[0]) + "'");
    }
  }

  if (!universe) throw ParseError(line_no, 1, "missing 'ddc' header");
  if (remap.empty()) throw ParseError(line_no, 1, "circuit has no gates");
  return Circuit(*universe, std::move(gates), remap.back());
}

/// DDC v1 text of the gates reachable from the output, renumbered so that
/// the output is last. Absent variables are not representable and are
/// dropped (they never occur in gates).
inline std::string to_ddc(const Circuit& c) {
  std::ostringstream out;
  out << "ddc " << c.universe_size() << "\n";
  std::vector<GateId> renum(c.num_gates(), 0);
  GateId next = 0;
  for (GateId i = 0; i <= c.output(); ++i) {
    if (!c.reachable(i)) continue;
    renum[i] = next++;
    const Gate& g = c.gate(i);
    switch (g.kind) {
      case GateKind::True: out << "t"; break;
      case GateKind::False: out << "f"; break;
      case GateKind::Var: out << "v " << g.var; break;
      case GateKind::Not: out << "n " << renum[g.inputs[0]]; break;
      case GateKind::And:
      case GateKind::Or:
        out << (g.kind == GateKind::And ? "a" : "o");
        for (GateId in : g.inputs) out << " " << renum[in];
        break;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace shapcirc
