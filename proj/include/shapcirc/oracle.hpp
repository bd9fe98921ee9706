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

// Truth-table oracles and random d-D circuit generators for testing.
//
// The oracles enumerate subsets of the universe directly from the
// definitions and share no code with the circuit algorithms beyond circuit
// evaluation. They refuse universes larger than a guard.

#include <cstddef>
#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "shapcirc/circuit.hpp"
#include "shapcirc/coeffs.hpp"
#include "shapcirc/error.hpp"
#include "shapcirc/numeric.hpp"
#include "shapcirc/probability.hpp"

namespace shapcirc {

struct OracleGuard {
  std::size_t subsets = 16;  // limit on |V| for 2^|V| enumerations
  std::size_t nested = 12;   // limit on |V| for 3^|V| enumerations
};

namespace detail {

// Truth table of phi and Pi_V over all subsets of V, indexed by bitmask over
// the ascending universe.
class TruthTable {
 public:
  TruthTable(const Circuit& c, const ProbabilityAssignment* p, std::size_t limit)
      : universe_(c.universe()) {
    const std::size_t n = universe_.size();
    if (n > limit)
      throw GuardError("oracle refuses |V| = " + std::to_string(n) + " (guard " +
                       std::to_string(limit) + ")");
    const std::size_t count = std::size_t{1} << n;
    value_.resize(count);
    std::vector<char> member(c.universe_size() + 1, 0);
    for (std::size_t mask = 0; mask < count; ++mask) {
      for (std::size_t i = 0; i < n; ++i) member[universe_[i]] = (mask >> i) & 1;
      value_[mask] = c.evaluate_mask(member);
    }
    if (p == nullptr) return;
    p->require_covers(c);
    prob_.resize(count);
    for (std::size_t mask = 0; mask < count; ++mask) {
      Rational w(1);
      for (std::size_t i = 0; i < n; ++i) {
        const Rational& py = (*p)[universe_[i]];
        w *= ((mask >> i) & 1) ? py : Rational(1) - py;
      }
      prob_[mask] = w;
    }
  }

  std::size_t n() const { return universe_.size(); }
  std::size_t count() const { return value_.size(); }
  bool value(std::size_t mask) const { return value_[mask]; }
  const Rational& prob(std::size_t mask) const { return prob_[mask]; }
  // Bit position of x, or n() when x is outside V.
  std::size_t bit(VarId x) const {
    for (std::size_t i = 0; i < universe_.size(); ++i)
      if (universe_[i] == x) return i;
    return universe_.size();
  }

 private:
  VarSet universe_;
  std::vector<char> value_;
  std::vector<Rational> prob_;
};

inline std::size_t popcount(std::size_t mask) {
  return static_cast<std::size_t>(__builtin_popcountll(mask));
}

// Deterministic score of phi restricted to the subsets of `zone`, whose
// size is `zone_size`, for the variable at bit xb.
inline Rational restricted_score(const TruthTable& t, std::size_t zone, std::size_t zone_size,
                                 std::size_t xb, const CoefficientFunction& cf,
                                 const BinomialTable& binomials) {
  const std::size_t xbit = std::size_t{1} << xb;
  const std::size_t rest = zone & ~xbit;
  Rational total(0);
  for (std::size_t s = rest;; s = (s - 1) & rest) {
    const int diff = int(t.value(s | xbit)) - int(t.value(s));
    if (diff != 0) total += diff * cf(zone_size, popcount(s), binomials);
    if (s == 0) break;
  }
  return total;
}

}  // namespace detail

/// ev(phi) = sum_Z Pi_V(Z) phi(Z).
inline Rational brute_ev(const Circuit& c, const ProbabilityAssignment& p,
                         const OracleGuard& guard = {}) {
  detail::TruthTable t(c, &p, guard.subsets);
  Rational total(0);
  for (std::size_t mask = 0; mask < t.count(); ++mask)
    if (t.value(mask)) total += t.prob(mask);
  return total;
}

/// ev_k(phi) = sum_{|Z| = k} Pi_V(Z) phi(Z).
inline Rational brute_ev_k(const Circuit& c, const ProbabilityAssignment& p, std::size_t k,
                           const OracleGuard& guard = {}) {
  detail::TruthTable t(c, &p, guard.subsets);
  Rational total(0);
  for (std::size_t mask = 0; mask < t.count(); ++mask)
    if (t.value(mask) && detail::popcount(mask) == k) total += t.prob(mask);
  return total;
}

/// ennv_{k,l}(phi) = sum_{|Z| = k} Pi_V(Z) sum_{E subset Z, |E| = l} phi(E).
inline Rational brute_ennv(const Circuit& c, const ProbabilityAssignment& p, std::size_t k,
                           std::size_t l, const OracleGuard& guard = {}) {
  detail::TruthTable t(c, &p, guard.nested);
  Rational total(0);
  for (std::size_t z = 0; z < t.count(); ++z) {
    if (detail::popcount(z) != k) continue;
    std::size_t hits = 0;
    for (std::size_t e = z;; e = (e - 1) & z) {
      if (t.value(e) && detail::popcount(e) == l) ++hits;
      if (e == 0) break;
    }
    if (hits != 0) total += t.prob(z) * static_cast<unsigned long>(hits);
  }
  return total;
}

/// env(phi) = sum_Z Pi_V(Z) sum_{E subset Z} phi(E).
inline Rational brute_env(const Circuit& c, const ProbabilityAssignment& p,
                          const OracleGuard& guard = {}) {
  detail::TruthTable t(c, &p, guard.nested);
  Rational total(0);
  for (std::size_t z = 0; z < t.count(); ++z) {
    std::size_t hits = 0;
    for (std::size_t e = z;; e = (e - 1) & z) {
      if (t.value(e)) ++hits;
      if (e == 0) break;
    }
    if (hits != 0) total += t.prob(z) * static_cast<unsigned long>(hits);
  }
  return total;
}

/// score_c(phi, x) = sum_{S subset V \ {x}} c(|V|, |S|) (phi(S + x) - phi(S)).
inline Rational brute_score(const Circuit& c, VarId x, const CoefficientFunction& cf,
                            const OracleGuard& guard = {}) {
  if (!c.in_universe(x)) throw InputError("variable " + std::to_string(x) + " is not in the universe");
  detail::TruthTable t(c, nullptr, guard.subsets);
  BinomialTable binomials(t.n());
  return detail::restricted_score(t, t.count() - 1, t.n(), t.bit(x), cf, binomials);
}

/// escore_c(phi, x) = sum_{Z containing x} Pi_V(Z) score_c(phi restricted to Z, x).
inline Rational brute_escore(const Circuit& c, const ProbabilityAssignment& p, VarId x,
                             const CoefficientFunction& cf, const OracleGuard& guard = {}) {
  if (!c.in_universe(x)) throw InputError("variable " + std::to_string(x) + " is not in the universe");
  detail::TruthTable t(c, &p, guard.nested);
  BinomialTable binomials(t.n());
  const std::size_t xb = t.bit(x);
  Rational total(0);
  for (std::size_t z = 0; z < t.count(); ++z) {
    if (!((z >> xb) & 1) || is_zero(t.prob(z))) continue;
    total += t.prob(z) * detail::restricted_score(t, z, detail::popcount(z), xb, cf, binomials);
  }
  return total;
}

/// Binary decision tree; each root-to-leaf path tests a variable at most once.
struct DecisionTree {
  struct Node {
    VarId var = 0;  // 0 for a leaf
    bool leaf_value = false;
    std::size_t hi = 0, lo = 0;
  };
  std::size_t universe_size = 0;
  std::vector<Node> nodes;  // nodes[0] is the root
};

/// Random decision tree of the given depth over variables 1..num_vars; a
/// non-root node becomes a leaf early with probability 1/8.
inline DecisionTree random_decision_tree(std::uint64_t seed, std::size_t num_vars,
                                         std::size_t depth) {
  std::mt19937_64 rng(seed);
  DecisionTree tree;
  tree.universe_size = num_vars;
  std::vector<VarId> path;
  auto grow = [&](auto& self, std::size_t remaining, bool root) -> std::size_t {
    const std::size_t id = tree.nodes.size();
    tree.nodes.emplace_back();
    std::vector<VarId> free;
    for (VarId v = 1; v <= num_vars; ++v)
      if (std::find(path.begin(), path.end(), v) == path.end()) free.push_back(v);
    const bool stop = remaining == 0 || free.empty() || (!root && rng() % 8 == 0);
    if (stop) {
      tree.nodes[id].leaf_value = rng() & 1;
      return id;
    }
    const VarId v = free[rng() % free.size()];
    tree.nodes[id].var = v;
    path.push_back(v);
    const std::size_t hi = self(self, remaining - 1, false);
    const std::size_t lo = self(self, remaining - 1, false);
    path.pop_back();
    tree.nodes[id].hi = hi;
    tree.nodes[id].lo = lo;
    return id;
  };
  grow(grow, depth, true);
  return tree;
}

/// Circuit (x & hi) | (!x & lo) per inner node, sharing variable, negated
/// variable and constant gates.
inline Circuit decision_tree_to_dd(const DecisionTree& tree) {
  CircuitBuilder b(tree.universe_size);
  std::vector<GateId> negated(tree.universe_size + 1, 0);
  std::vector<char> has_negated(tree.universe_size + 1, 0);
  auto build = [&](auto& self, std::size_t id) -> GateId {
    const DecisionTree::Node& node = tree.nodes[id];
    if (node.var == 0) return b.constant(node.leaf_value);
    const GateId hi = self(self, node.hi);
    const GateId lo = self(self, node.lo);
    const GateId v = b.variable(node.var);
    if (!has_negated[node.var]) {
      negated[node.var] = b.negation(v);
      has_negated[node.var] = 1;
    }
    return b.disjunction(b.conjunction(v, hi), b.conjunction(negated[node.var], lo));
  };
  const GateId out = build(build, 0);
  return std::move(b).build(out);
}

/// Random d-D circuit over 1..num_vars: a decision structure of the given
/// depth whose inner nodes are either variable tests, decomposable
/// conjunctions of two subcircuits over a split of the free variables, or
/// negations.
inline Circuit random_dd(std::uint64_t seed, std::size_t num_vars, std::size_t depth) {
  std::mt19937_64 rng(seed);
  CircuitBuilder b(num_vars);
  std::vector<VarId> all;
  for (VarId v = 1; v <= num_vars; ++v) all.push_back(v);

  auto build = [&](auto& self, std::vector<VarId> free, std::size_t remaining) -> GateId {
    if (remaining == 0 || free.empty() || rng() % 16 == 0) {
      if (!free.empty() && rng() % 4 == 0) return b.variable(free[rng() % free.size()]);
      return b.constant(rng() & 1);
    }
    const unsigned pick = rng() % 10;
    if (pick == 0) return b.negation(self(self, free, remaining - 1));
    if (pick == 1 && free.size() >= 2) {
      std::shuffle(free.begin(), free.end(), rng);
      const std::size_t cut = 1 + rng() % (free.size() - 1);
      std::vector<VarId> left(free.begin(), free.begin() + cut), right(free.begin() + cut, free.end());
      return b.conjunction(self(self, left, remaining - 1), self(self, right, remaining - 1));
    }
    const std::size_t at = rng() % free.size();
    const VarId v = free[at];
    free.erase(free.begin() + at);
    const GateId hi = self(self, free, remaining - 1);
    const GateId lo = self(self, free, remaining - 1);
    const GateId x = b.variable(v);
    return b.disjunction(b.conjunction(x, hi), b.conjunction(b.negation(x), lo));
  };
  const GateId out = build(build, all, depth);
  return std::move(b).build(out);
}

/// Probabilities a/d with 1 <= d <= max_denominator, one per variable 1..n.
inline ProbabilityAssignment random_probabilities(std::uint64_t seed, std::size_t n,
                                                  unsigned long max_denominator = 64) {
  std::mt19937_64 rng(seed);
  ProbabilityAssignment p(n);
  for (VarId x = 1; x <= n; ++x) {
    const unsigned long d = 1 + rng() % max_denominator;
    const unsigned long a = rng() % (d + 1);
    Rational r{Integer(a), Integer(d)};
    r.canonicalize();
    p.set(x, r);
  }
  return p;
}

}  // namespace shapcirc
