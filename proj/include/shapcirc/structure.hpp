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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shapcirc/circuit.hpp"

namespace shapcirc {

enum class Determinism { Verified, Refuted, Unchecked };

inline const char* to_string(Determinism d) {
  switch (d) {
    case Determinism::Verified: return "verified";
    case Determinism::Refuted: return "refuted";
    case Determinism::Unchecked: return "unchecked";
  }
  return "?";
}

// An assignment satisfying two inputs of one Or gate.
struct DeterminismWitness {
  GateId gate = 0;
  GateId first_input = 0;
  GateId second_input = 0;
  VarSet true_vars;
};

struct StructureReport {
  bool decomposable = true;
  Determinism deterministic = Determinism::Verified;
  bool smooth = true;
  bool binary = true;            // every And/Or gate has exactly two inputs
  bool covers_universe = true;   // vars(C) = V
  bool tight = true;             // smooth && binary && covers_universe

  std::optional<GateId> non_decomposable_gate;
  std::optional<GateId> non_smooth_gate;
  std::optional<DeterminismWitness> witness;
  std::vector<GateId> unchecked_gates;  // Or gates above the budget

  bool is_dd() const { return decomposable && deterministic != Determinism::Refuted; }
};

namespace detail {

// Evaluates the cone of `root` on 64 assignments at once. Bit b of the word
// of variable vars[i] is bit i of (block * 64 + b).
class ConeEvaluator {
 public:
  ConeEvaluator(const Circuit& c, GateId root) : c_(c) {
    std::vector<char> in_cone(root + 1, 0);
    in_cone[root] = 1;
    for (GateId i = root + 1; i-- > 0;)
      if (in_cone[i])
        for (GateId in : c.gate(i).inputs) in_cone[in] = 1;
    for (GateId i = 0; i <= root; ++i)
      if (in_cone[i]) cone_.push_back(i);
    words_.assign(root + 1, 0);
  }

  void run(const VarSet& vars, std::uint64_t block) {
    var_words_.assign(c_.universe_size() + 1, 0);
    for (std::size_t i = 0; i < vars.size(); ++i) {
      std::uint64_t w = 0;
      for (unsigned b = 0; b < 64; ++b)
        if ((((block << 6U) | b) >> i) & 1U) w |= std::uint64_t{1} << b;
      var_words_[vars[i]] = w;
    }
    for (GateId i : cone_) {
      const Gate& g = c_.gate(i);
      std::uint64_t w = 0;
      switch (g.kind) {
        case GateKind::True: w = ~std::uint64_t{0}; break;
        case GateKind::False: w = 0; break;
        case GateKind::Var: w = var_words_[g.var]; break;
        case GateKind::Not: w = ~words_[g.inputs[0]]; break;
        case GateKind::And:
          w = ~std::uint64_t{0};
          for (GateId in : g.inputs) w &= words_[in];
          break;
        case GateKind::Or:
          for (GateId in : g.inputs) w |= words_[in];
          break;
      }
      words_[i] = w;
    }
  }

  std::uint64_t word(GateId g) const { return words_[g]; }

 private:
  const Circuit& c_;
  std::vector<GateId> cone_;
  std::vector<std::uint64_t> words_;
  std::vector<std::uint64_t> var_words_;
};

// Checks pairwise disjointness of the inputs of Or gate `g` by enumerating
// all assignments of vars(g).
inline std::optional<DeterminismWitness> check_or_gate(const Circuit& c, GateId g) {
  const VarSet& vars = c.vars(g);
  const Gate& gate = c.gate(g);
  ConeEvaluator eval(c, g);
  const std::uint64_t total = std::uint64_t{1} << vars.size();
  const std::uint64_t blocks = total <= 64 ? 1 : total / 64;
  const std::uint64_t valid = total >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << total) - 1;
  for (std::uint64_t block = 0; block < blocks; ++block) {
    eval.run(vars, block);
    for (std::size_t a = 0; a < gate.inputs.size(); ++a)
      for (std::size_t b = a + 1; b < gate.inputs.size(); ++b) {
        std::uint64_t both = eval.word(gate.inputs[a]) & eval.word(gate.inputs[b]) & valid;
        if (both == 0) continue;
        unsigned bit = static_cast<unsigned>(__builtin_ctzll(both));
        std::uint64_t assignment = (block << 6U) | bit;
        DeterminismWitness w{g, gate.inputs[a], gate.inputs[b], {}};
        for (std::size_t i = 0; i < vars.size(); ++i)
          if ((assignment >> i) & 1U) w.true_vars.push_back(vars[i]);
        return w;
      }
  }
  return std::nullopt;
}

}  // namespace detail

/// Decides decomposability, smoothness and tightness exactly from the cached
/// variable sets. Determinism of each Or gate is checked by exhaustive
/// enumeration when |vars(g)| <= determinism_budget; larger gates are trusted
/// and reported as unchecked. Only gates reachable from the output count.
inline StructureReport analyze_structure(const Circuit& c, std::size_t determinism_budget = 16) {
  StructureReport r;
  if (determinism_budget > 40) determinism_budget = 40;
  for (GateId i = 0; i < c.num_gates(); ++i) {
    if (!c.reachable(i)) continue;
    const Gate& g = c.gate(i);
    if (g.kind != GateKind::And && g.kind != GateKind::Or) continue;
    if (g.inputs.size() != 2) r.binary = false;
    if (g.kind == GateKind::And) {
      for (std::size_t a = 0; a < g.inputs.size() && r.decomposable; ++a)
        for (std::size_t b = a + 1; b < g.inputs.size(); ++b)
          if (!var_disjoint(c.vars(g.inputs[a]), c.vars(g.inputs[b]))) {
            r.decomposable = false;
            r.non_decomposable_gate = i;
            break;
          }
      continue;
    }
    for (GateId in : g.inputs)
      if (c.vars(in) != c.vars(i)) {
        if (r.smooth) r.non_smooth_gate = i;
        r.smooth = false;
      }
    if (r.deterministic == Determinism::Refuted) continue;
    if (c.vars(i).size() > determinism_budget) {
      r.unchecked_gates.push_back(i);
      continue;
    }
    if (auto w = detail::check_or_gate(c, i)) {
      r.deterministic = Determinism::Refuted;
      r.witness = std::move(w);
    }
  }
  if (r.deterministic != Determinism::Refuted && !r.unchecked_gates.empty())
    r.deterministic = Determinism::Unchecked;
  r.covers_universe = c.vars() == c.universe();
  r.tight = r.smooth && r.binary && r.covers_universe;
  return r;
}

/// Cheap structural checks only (no determinism enumeration).
inline StructureReport analyze_shape(const Circuit& c) { return analyze_structure(c, 0); }

}  // namespace shapcirc
