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
#include <map>
#include <string>
#include <vector>

#include "shapcirc/circuit.hpp"
#include "shapcirc/error.hpp"
#include "shapcirc/structure.hpp"

namespace shapcirc {

/// Equivalent tight d-D circuit over the same universe: every And/Or gate is
/// binary, every Or gate is smooth, and vars(C') = V.
///
/// n-ary gates become left-leaning binary chains. An Or input missing
/// variables y1..yk of its gate is conjoined with the gadgets (yi | !yi); the
/// output is padded the same way with the universe variables it misses. One
/// gadget is shared per variable. Throws StructureError if `c` is not
/// decomposable; determinism is trusted and preserved.
inline Circuit tighten(const Circuit& c) {
  const StructureReport shape = analyze_shape(c);
  if (!shape.decomposable)
    throw StructureError("circuit is not decomposable (gate " +
                         std::to_string(*shape.non_decomposable_gate) + ")");

  CircuitBuilder b(c.universe_size());
  std::map<VarId, GateId> gadgets;
  auto gadget = [&](VarId y) {
    auto it = gadgets.find(y);
    if (it != gadgets.end()) return it->second;
    GateId v = b.variable(y);
    GateId g = b.disjunction(v, b.negation(v));
    gadgets.emplace(y, g);
    return g;
  };
  auto pad = [&](GateId g, const VarSet& missing) {
    for (VarId y : missing) g = b.conjunction(g, gadget(y));
    return g;
  };

  std::vector<GateId> map(c.num_gates(), 0);
  for (GateId i = 0; i < c.num_gates(); ++i) {
    if (!c.reachable(i)) continue;
    const Gate& g = c.gate(i);
    switch (g.kind) {
      case GateKind::True:
      case GateKind::False:
        map[i] = b.constant(g.kind == GateKind::True);
        break;
      case GateKind::Var:
        map[i] = b.variable(g.var);
        break;
      case GateKind::Not:
        map[i] = b.negation(map[g.inputs[0]]);
        break;
      case GateKind::And: {
        GateId acc = map[g.inputs[0]];
        for (std::size_t k = 1; k < g.inputs.size(); ++k) acc = b.conjunction(acc, map[g.inputs[k]]);
        map[i] = acc;
        break;
      }
      case GateKind::Or: {
        const VarSet& target = c.vars(i);
        auto smoothed = [&](GateId in) { return pad(map[in], var_difference(target, c.vars(in))); };
        GateId acc = smoothed(g.inputs[0]);
        for (std::size_t k = 1; k < g.inputs.size(); ++k) acc = b.disjunction(acc, smoothed(g.inputs[k]));
        map[i] = acc;
        break;
      }
    }
  }
  GateId out = pad(map[c.output()], var_difference(c.universe(), c.vars()));
  return std::move(b).build(out, c.absent());
}

/// Circuit for phi_{+x} (value true) or phi_{-x} (value false): every gate
/// labelled x becomes a constant and x leaves the universe. Gate numbering and
/// the identities of the other variables are unchanged, so a tight input
/// stays tight over V \ {x}.
inline Circuit condition(const Circuit& c, VarId x, bool value) {
  if (!c.in_universe(x))
    throw InputError("cannot condition on variable " + std::to_string(x) +
                     ": not in the universe");
  std::vector<Gate> gates = c.gates();
  for (Gate& g : gates)
    if (g.kind == GateKind::Var && g.var == x) g = Gate::constant(value);
  VarSet absent = c.absent();
  absent.insert(std::lower_bound(absent.begin(), absent.end(), x), x);
  return Circuit(c.universe_size(), std::move(gates), c.output(), absent);
}

namespace detail {

// Universe size after adding fresh variable x, validating freshness.
inline std::size_t fresh_universe(const Circuit& c, VarId x) {
  if (x == 0) throw InputError("variable ids start at 1");
  if (c.in_universe(x))
    throw InputError("variable " + std::to_string(x) + " is already in the universe");
  if (x > c.universe_size() + 1)
    throw InputError("fresh variable " + std::to_string(x) + " would leave a gap in the universe");
  return std::max<std::size_t>(c.universe_size(), x);
}

inline VarSet without(VarSet s, VarId x) {
  s.erase(std::remove(s.begin(), s.end(), x), s.end());
  return s;
}

}  // namespace detail

/// phi & x for a variable x outside V. The universe grows by x and exactly two
/// gates are appended (the variable and the conjunction), which is
/// decomposable since x is fresh.
inline Circuit conjoin_fresh_variable(const Circuit& c, VarId x) {
  const std::size_t universe = detail::fresh_universe(c, x);
  std::vector<Gate> gates = c.gates();
  gates.push_back(Gate::variable(x));
  const auto v = static_cast<GateId>(gates.size() - 1);
  gates.push_back(Gate::conjunction({c.output(), v}));
  return Circuit(universe, std::move(gates), std::nullopt, detail::without(c.absent(), x));
}

/// phi | x for a variable x outside V, built as !(!phi & !x) so that the
/// result stays d-D.
inline Circuit disjoin_fresh_variable(const Circuit& c, VarId x) {
  const std::size_t universe = detail::fresh_universe(c, x);
  std::vector<Gate> gates = c.gates();
  auto push = [&](Gate g) {
    gates.push_back(std::move(g));
    return static_cast<GateId>(gates.size() - 1);
  };
  GateId v = push(Gate::variable(x));
  GateId not_phi = push(Gate::negation(c.output()));
  GateId not_v = push(Gate::negation(v));
  GateId both = push(Gate::conjunction({not_phi, not_v}));
  push(Gate::negation(both));
  return Circuit(universe, std::move(gates), std::nullopt, detail::without(c.absent(), x));
}

}  // namespace shapcirc
