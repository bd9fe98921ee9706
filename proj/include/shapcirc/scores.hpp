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

// Direct algorithms on d-D circuits: expected value, expected nested value,
// size-stratified model counts, expected Shapley-like scores (one bottom-up
// pass computing delta/beta/gamma tables), the linear Banzhaf path and the
// equal-probability counting path.
//
// Every algorithm is templated on its arithmetic type: `Rational` (exact,
// the default) or `double` (approximate, opt-in).

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shapcirc/circuit.hpp"
#include "shapcirc/coeffs.hpp"
#include "shapcirc/error.hpp"
#include "shapcirc/numeric.hpp"
#include "shapcirc/probability.hpp"
#include "shapcirc/structure.hpp"
#include "shapcirc/transform.hpp"

namespace shapcirc {

/// Lower-triangular table t(k, l), 0 <= l <= k <= m. Entries with l > k are
/// zero and not stored.
template <class Number>
class Triangle {
 public:
  Triangle() = default;
  explicit Triangle(std::size_t m) : m_(m), data_((m + 1) * (m + 2) / 2, Number(0)) {}

  std::size_t dim() const { return m_; }
  Number& at(std::size_t k, std::size_t l) { return data_[k * (k + 1) / 2 + l]; }
  const Number& at(std::size_t k, std::size_t l) const { return data_[k * (k + 1) / 2 + l]; }
  const std::vector<Number>& values() const { return data_; }
  // Zero outside the stored range.
  Number get(std::size_t k, std::size_t l) const {
    if (k > m_ || l > k) return Number(0);
    return at(k, l);
  }

 private:
  std::size_t m_ = 0;
  std::vector<Number> data_;
};

// Per-gate dynamic-programming values of the score algorithm. With m =
// |vars(g) \ {x}|: delta[k] is the probability mass of size-k subsets of
// vars(g) \ {x}; beta(k, l) / gamma(k, l) are the nested values of the gate
// with x set to 1 / 0.
template <class Number>
struct GateTable {
  std::vector<Number> delta;
  Triangle<Number> beta;
  Triangle<Number> gamma;
};

/// Metadata of one score-table pass.
struct TableStats {
  std::size_t gates = 0;     // gates of the tightened circuit
  std::size_t max_bits = 0;  // largest numerator + denominator bit length seen
};

namespace detail {

inline std::size_t bit_length(const Rational& r) {
  return mpz_sizeinbase(r.get_num_mpz_t(), 2) + mpz_sizeinbase(r.get_den_mpz_t(), 2);
}
inline std::size_t bit_length(double) { return 0; }

template <class Number>
void update_stats(TableStats& stats, const GateTable<Number>& t) {
  for (const Number& v : t.delta) stats.max_bits = std::max(stats.max_bits, bit_length(v));
  for (const Number& v : t.beta.values()) stats.max_bits = std::max(stats.max_bits, bit_length(v));
  for (const Number& v : t.gamma.values()) stats.max_bits = std::max(stats.max_bits, bit_length(v));
}

inline void add_product(Rational& acc, const Rational& a, const Rational& b, Rational& tmp) {
  mpq_mul(tmp.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
  mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), tmp.get_mpq_t());
}
inline void add_product(double& acc, double a, double b, double&) { acc += a * b; }

template <class Number>
std::vector<Number> convolve(const std::vector<Number>& a, const std::vector<Number>& b) {
  std::vector<Number> out(a.size() + b.size() - 1, Number(0));
  Number tmp;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!is_zero(b[j])) add_product(out[i + j], a[i], b[j], tmp);
  }
  return out;
}

// out(k1+k2, l1+l2) += a(k1, l1) * b(k2, l2)
template <class Number>
Triangle<Number> convolve(const Triangle<Number>& a, const Triangle<Number>& b) {
  Triangle<Number> out(a.dim() + b.dim());
  Number tmp;
  for (std::size_t k1 = 0; k1 <= a.dim(); ++k1)
    for (std::size_t l1 = 0; l1 <= k1; ++l1) {
      const Number& av = a.at(k1, l1);
      if (is_zero(av)) continue;
      for (std::size_t k2 = 0; k2 <= b.dim(); ++k2)
        for (std::size_t l2 = 0; l2 <= k2; ++l2) {
          const Number& bv = b.at(k2, l2);
          if (!is_zero(bv)) add_product(out.at(k1 + k2, l1 + l2), av, bv, tmp);
        }
    }
  return out;
}

// Index of the last gate reading each gate; the output is kept alive.
inline std::vector<GateId> last_use(const Circuit& c) {
  std::vector<GateId> last(c.num_gates(), 0);
  for (GateId i = 0; i < c.num_gates(); ++i)
    if (c.reachable(i))
      for (GateId in : c.gate(i).inputs) last[in] = i;
  last[c.output()] = static_cast<GateId>(c.num_gates());
  return last;
}

// `c` itself when tight, otherwise its tightening (stored in `holder`).
inline const Circuit& ensure_tight(const Circuit& c, std::optional<Circuit>& holder) {
  const StructureReport shape = analyze_shape(c);
  if (!shape.decomposable)
    throw StructureError("circuit is not decomposable (gate " +
                         std::to_string(*shape.non_decomposable_gate) + ")");
  if (shape.tight) return c;
  holder.emplace(tighten(c));
  return *holder;
}

inline void require_decomposable(const Circuit& c) {
  for (GateId i = 0; i < c.num_gates(); ++i) {
    const Gate& g = c.gate(i);
    if (!c.reachable(i) || g.kind != GateKind::And) continue;
    VarSet seen;
    for (GateId in : g.inputs) {
      if (!var_disjoint(seen, c.vars(in)))
        throw StructureError("circuit is not decomposable (gate " + std::to_string(i) + ")");
      seen = var_union(seen, c.vars(in));
    }
  }
}

inline void require_in_universe(const Circuit& c, VarId x) {
  if (!c.in_universe(x))
    throw InputError("variable " + std::to_string(x) + " is not in the universe");
}

}  // namespace detail

/// ev(phi) = sum_Z Pi_V(Z) phi(Z) in one bottom-up pass: constants 0/1,
/// variable y -> p_y, negation 1 - child, Or -> sum, And -> product. Needs
/// decomposability only; Or gates are trusted to be deterministic.
template <class Number = Rational>
Number ev_dd(const Circuit& c, const ProbabilityAssignment& p) {
  detail::require_decomposable(c);
  p.require_covers(c);
  std::vector<Number> value(c.num_gates(), Number(0));
  for (GateId i = 0; i <= c.output(); ++i) {
    if (!c.reachable(i)) continue;
    const Gate& g = c.gate(i);
    switch (g.kind) {
      case GateKind::True: value[i] = Number(1); break;
      case GateKind::False: value[i] = Number(0); break;
      case GateKind::Var: value[i] = number_cast<Number>(p[g.var]); break;
      case GateKind::Not: value[i] = Number(1) - value[g.inputs[0]]; break;
      case GateKind::And:
        value[i] = Number(1);
        for (GateId in : g.inputs) value[i] *= value[in];
        break;
      case GateKind::Or:
        value[i] = Number(0);
        for (GateId in : g.inputs) value[i] += value[in];
        break;
    }
  }
  return value[c.output()];
}

/// env(phi) = sum_Z Pi_V(Z) sum_{E subset Z} phi(E), linear on a tight d-D
/// circuit: constants 1/0, variable y -> p_y, negation
/// prod_{y in vars(g)} (1 + p_y) - child, Or -> sum, And -> product. Circuits
/// that are not tight are tightened first.
template <class Number = Rational>
Number env_dd(const Circuit& circuit, const ProbabilityAssignment& p) {
  std::optional<Circuit> holder;
  const Circuit& c = detail::ensure_tight(circuit, holder);
  p.require_covers(c);
  std::vector<Number> alpha(c.num_gates(), Number(0));
  std::vector<Number> mass(c.num_gates(), Number(1));  // prod (1 + p_y) over vars(g)
  for (GateId i = 0; i <= c.output(); ++i) {
    if (!c.reachable(i)) continue;
    const Gate& g = c.gate(i);
    switch (g.kind) {
      case GateKind::True: alpha[i] = Number(1); break;
      case GateKind::False: alpha[i] = Number(0); break;
      case GateKind::Var:
        alpha[i] = number_cast<Number>(p[g.var]);
        mass[i] = Number(1) + alpha[i];
        break;
      case GateKind::Not:
        mass[i] = mass[g.inputs[0]];
        alpha[i] = mass[i] - alpha[g.inputs[0]];
        break;
      case GateKind::And:
        alpha[i] = Number(1);
        for (GateId in : g.inputs) {
          alpha[i] *= alpha[in];
          mass[i] *= mass[in];
        }
        break;
      case GateKind::Or:
        mass[i] = mass[g.inputs[0]];
        for (GateId in : g.inputs) alpha[i] += alpha[in];
        break;
    }
  }
  return alpha[c.output()];
}

/// #SAT_l(C) for l = 0..|V|: satisfying assignments with exactly l true
/// variables. Negation: C(|vars(g)|, l) - child; Or: sum; And: convolution.
inline std::vector<Integer> count_sat_by_size(const Circuit& circuit) {
  std::optional<Circuit> holder;
  const Circuit& c = detail::ensure_tight(circuit, holder);
  BinomialTable binomials(c.num_vars());
  const auto last = detail::last_use(c);
  std::vector<std::vector<Integer>> counts(c.num_gates());
  for (GateId i = 0; i <= c.output(); ++i) {
    if (!c.reachable(i)) continue;
    const Gate& g = c.gate(i);
    std::vector<Integer>& out = counts[i];
    switch (g.kind) {
      case GateKind::True: out = {1}; break;
      case GateKind::False: out = {0}; break;
      case GateKind::Var: out = {0, 1}; break;
      case GateKind::Not: {
        const auto& child = counts[g.inputs[0]];
        const std::size_t m = c.vars(i).size();
        out.resize(m + 1);
        for (std::size_t l = 0; l <= m; ++l) out[l] = binomials(m, l) - child[l];
        break;
      }
      case GateKind::And:
        out = counts[g.inputs[0]];
        for (std::size_t k = 1; k < g.inputs.size(); ++k) {
          const auto& rhs = counts[g.inputs[k]];
          std::vector<Integer> next(out.size() + rhs.size() - 1);
          for (std::size_t a = 0; a < out.size(); ++a)
            for (std::size_t b = 0; b < rhs.size(); ++b) next[a + b] += out[a] * rhs[b];
          out = std::move(next);
        }
        break;
      case GateKind::Or:
        out = counts[g.inputs[0]];
        for (std::size_t k = 1; k < g.inputs.size(); ++k)
          for (std::size_t l = 0; l < out.size(); ++l) out[l] += counts[g.inputs[k]][l];
        break;
    }
    for (GateId in : g.inputs)
      if (last[in] == i) counts[in] = {};
  }
  return counts[c.output()];
}

/// Bottom-up delta/beta/gamma tables on a tight d-D circuit with respect to
/// variable x. Gates labelled x count as a constant for delta and as the
/// constant 1 (beta) or 0 (gamma) for the nested values, so beta/gamma at a
/// gate are the nested values of that gate with x conditioned to 1/0. With
/// x = 0 no variable is special and beta = gamma is the table
/// ennv_{k,l} of the gate itself (gamma is then left empty).
///
/// Tables of a gate are released once its last reader is processed unless
/// keep_all is set.
template <class Number = Rational>
std::vector<std::optional<GateTable<Number>>> score_tables(const Circuit& c,
                                                          const ProbabilityAssignment& p,
                                                          VarId x, bool keep_all = false,
                                                          TableStats* stats = nullptr) {
  const StructureReport shape = analyze_shape(c);
  if (!shape.decomposable || !shape.smooth)
    throw StructureError("score tables need a smooth decomposable circuit");
  p.require_covers(c);
  const bool with_gamma = x != 0;
  BinomialTable binomials(c.num_vars());
  const auto last = detail::last_use(c);

  std::vector<std::optional<GateTable<Number>>> tables(c.num_gates());
  for (GateId i = 0; i <= c.output(); ++i) {
    if (!c.reachable(i)) continue;
    const Gate& g = c.gate(i);
    GateTable<Number> t;
    switch (g.kind) {
      case GateKind::True:
      case GateKind::False: {
        const Number a(g.kind == GateKind::True ? 1 : 0);
        t.delta = {Number(1)};
        t.beta = Triangle<Number>(0);
        t.beta.at(0, 0) = a;
        if (with_gamma) t.gamma = t.beta;
        break;
      }
      case GateKind::Var:
        if (g.var == x) {
          t.delta = {Number(1)};
          t.beta = Triangle<Number>(0);
          t.beta.at(0, 0) = Number(1);
          t.gamma = Triangle<Number>(0);
        } else {
          const Number py = number_cast<Number>(p[g.var]);
          t.delta = {Number(1) - py, py};
          t.beta = Triangle<Number>(1);
          t.beta.at(1, 1) = py;
          if (with_gamma) t.gamma = t.beta;
        }
        break;
      case GateKind::Not: {
        const GateTable<Number>& in = *tables[g.inputs[0]];
        t.delta = in.delta;
        const std::size_t m = in.beta.dim();
        t.beta = Triangle<Number>(m);
        if (with_gamma) t.gamma = Triangle<Number>(m);
        for (std::size_t k = 0; k <= m; ++k) {
          if (is_zero(t.delta[k])) {
            for (std::size_t l = 0; l <= k; ++l) {
              t.beta.at(k, l) = -in.beta.at(k, l);
              if (with_gamma) t.gamma.at(k, l) = -in.gamma.at(k, l);
            }
            continue;
          }
          for (std::size_t l = 0; l <= k; ++l) {
            const Number full = number_cast<Number>(binomials(k, l)) * t.delta[k];
            t.beta.at(k, l) = full - in.beta.at(k, l);
            if (with_gamma) t.gamma.at(k, l) = full - in.gamma.at(k, l);
          }
        }
        break;
      }
      case GateKind::Or: {
        const GateTable<Number>& first = *tables[g.inputs[0]];
        t = first;
        for (std::size_t j = 1; j < g.inputs.size(); ++j) {
          const GateTable<Number>& in = *tables[g.inputs[j]];
          if (in.beta.dim() != t.beta.dim()) throw StructureError("Or gate is not smooth");
          for (std::size_t k = 0; k <= t.beta.dim(); ++k)
            for (std::size_t l = 0; l <= k; ++l) {
              t.beta.at(k, l) += in.beta.at(k, l);
              if (with_gamma) t.gamma.at(k, l) += in.gamma.at(k, l);
            }
        }
        break;
      }
      case GateKind::And: {
        t = *tables[g.inputs[0]];
        for (std::size_t j = 1; j < g.inputs.size(); ++j) {
          const GateTable<Number>& in = *tables[g.inputs[j]];
          t.delta = detail::convolve(t.delta, in.delta);
          t.beta = detail::convolve(t.beta, in.beta);
          if (with_gamma) t.gamma = detail::convolve(t.gamma, in.gamma);
        }
        break;
      }
    }
    if (stats != nullptr) {
      ++stats->gates;
      detail::update_stats(*stats, t);
    }
    tables[i] = std::move(t);
    if (!keep_all)
      for (GateId in : g.inputs)
        if (last[in] == i) tables[in].reset();
  }
  return tables;
}

/// All ennv_{k,l}(C) = sum_{|Z|=k} Pi_V(Z) sum_{E subset Z, |E|=l} C(E) for
/// 0 <= l <= k <= |V|.
template <class Number = Rational>
Triangle<Number> envss_dd(const Circuit& circuit, const ProbabilityAssignment& p) {
  std::optional<Circuit> holder;
  const Circuit& c = detail::ensure_tight(circuit, holder);
  auto tables = score_tables<Number>(c, p, 0);
  return std::move(tables[c.output()]->beta);
}

/// escore_c(C, x) on a d-D circuit: tighten, build the delta/beta/gamma
/// tables in one pass, and return
///   p_x * sum_{k=0}^{n'} sum_{l=0}^{k} c(k+1, l) (beta_{k,l} - gamma_{k,l})
/// at the output, with n' = |V| - 1.
template <class Number = Rational>
Number escore_dd(const Circuit& circuit, const ProbabilityAssignment& p, VarId x,
                 const CoefficientFunction& cf, TableStats* stats = nullptr) {
  detail::require_in_universe(circuit, x);
  p.require_covers(circuit);
  if (!var_contains(circuit.vars(), x)) {
    detail::require_decomposable(circuit);
    return Number(0);
  }
  const Circuit c = tighten(circuit);
  const std::size_t n_prime = c.num_vars() - 1;
  auto tables = score_tables<Number>(c, p, x, false, stats);
  const GateTable<Number>& out = *tables[c.output()];
  const CoefficientTable coefficients(cf, n_prime + 1);

  Number sum(0);
  for (std::size_t k = 0; k <= out.beta.dim(); ++k)
    for (std::size_t l = 0; l <= k; ++l) {
      Number diff = out.beta.at(k, l) - out.gamma.at(k, l);
      if (is_zero(diff)) continue;
      sum += number_cast<Number>(coefficients(k + 1, l)) * diff;
    }
  return number_cast<Number>(p[x]) * sum;
}

/// Expected Banzhaf score in O(|C| |V|) gate operations:
///   p_x * (env(C_1) - env(C_0))
/// with C_1, C_0 the circuit conditioned on x = 1 / x = 0, each tight over
/// V \ {x}.
template <class Number = Rational>
Number ebanzhaf_dd(const Circuit& circuit, const ProbabilityAssignment& p, VarId x) {
  detail::require_in_universe(circuit, x);
  p.require_covers(circuit);
  if (!var_contains(circuit.vars(), x)) {
    detail::require_decomposable(circuit);
    return Number(0);
  }
  const Circuit c = tighten(circuit);
  const Circuit c1 = tighten(condition(c, x, true));
  const Circuit c0 = tighten(condition(c, x, false));
  return number_cast<Number>(p[x]) * (env_dd<Number>(c1, p) - env_dd<Number>(c0, p));
}

/// escore_c(C, x) when every variable has the same probability p:
///   sum_l [#SAT_l(C_1) - #SAT_l(C_0)]
///         * sum_{k=l}^{n-1} C(n-1-l, k-l) c(k+1, l) p^{k+1} (1-p)^{n-k-1}.
/// With p = 1 only k = n-1 survives and this is the deterministic score.
template <class Number = Rational>
Number escore_equal_prob(const Circuit& circuit, const Rational& p, VarId x,
                         const CoefficientFunction& cf) {
  detail::require_in_universe(circuit, x);
  if (sgn(p) < 0 || p > 1) throw InputError("probability " + to_string(p) + " outside [0, 1]");
  if (!var_contains(circuit.vars(), x)) {
    detail::require_decomposable(circuit);
    return Number(0);
  }
  const Circuit c = tighten(circuit);
  const std::size_t n = c.num_vars();
  const auto sat1 = count_sat_by_size(condition(c, x, true));
  const auto sat0 = count_sat_by_size(condition(c, x, false));
  BinomialTable binomials(n);
  const CoefficientTable coefficients(cf, n);

  const Number prob = number_cast<Number>(p);
  const Number comp = Number(1) - prob;
  std::vector<Number> p_pow(n + 1, Number(1)), q_pow(n + 1, Number(1));
  for (std::size_t i = 1; i <= n; ++i) {
    p_pow[i] = p_pow[i - 1] * prob;
    q_pow[i] = q_pow[i - 1] * comp;
  }

  Number total(0);
  for (std::size_t l = 0; l < n; ++l) {
    const Integer diff = sat1[l] - sat0[l];
    if (diff == 0) continue;
    Number weight(0);
    for (std::size_t k = l; k < n; ++k)
      weight += number_cast<Number>(binomials(n - 1 - l, k - l)) *
                number_cast<Number>(coefficients(k + 1, l)) * p_pow[k + 1] * q_pow[n - k - 1];
    total += number_cast<Number>(diff) * weight;
  }
  return total;
}

/// Same, reading the common probability off a uniform assignment.
template <class Number = Rational>
Number escore_equal_prob(const Circuit& circuit, const ProbabilityAssignment& p, VarId x,
                         const CoefficientFunction& cf) {
  p.require_covers(circuit);
  auto common = p.uniform_value(circuit.universe());
  if (!common) throw InputError("probabilities are not uniform");
  return escore_equal_prob<Number>(circuit, *common, x, cf);
}

}  // namespace shapcirc
