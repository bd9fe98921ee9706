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

// Oracle-parameterized reductions between expected scores and expected
// values. Each reduction rewrites the probabilities (or the circuit), calls
// its oracle at interpolation nodes, and recovers the target quantity with an
// exact Vandermonde solve. All arithmetic is exact.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "shapcirc/circuit.hpp"
#include "shapcirc/coeffs.hpp"
#include "shapcirc/error.hpp"
#include "shapcirc/numeric.hpp"
#include "shapcirc/oracle.hpp"
#include "shapcirc/probability.hpp"
#include "shapcirc/scores.hpp"
#include "shapcirc/transform.hpp"

namespace shapcirc {

/// ev(phi)
using EvOracle = std::function<Rational(const Circuit&, const ProbabilityAssignment&)>;
/// ev_k(phi)
using EvsOracle = std::function<Rational(const Circuit&, const ProbabilityAssignment&, std::size_t k)>;
/// ennv_{k,l}(phi)
using EnvssOracle = std::function<Rational(const Circuit&, const ProbabilityAssignment&,
                                           std::size_t k, std::size_t l)>;
/// env(phi)
using EnvOracle = std::function<Rational(const Circuit&, const ProbabilityAssignment&)>;
/// Expected score of one variable (Banzhaf or Shapley depending on context).
using EScoreOracle = std::function<Rational(const Circuit&, const ProbabilityAssignment&, VarId)>;
using EBanzhafOracle = EScoreOracle;
using EShapleyOracle = EScoreOracle;

/// One recorded oracle call.
struct OracleCall {
  std::string stage;                // reduction issuing the call
  std::optional<std::size_t> k, l;  // size indices passed to the oracle
  std::optional<Rational> node;     // interpolation node, if any
  std::vector<std::pair<VarId, Rational>> probabilities;  // over the oracle's universe
  Rational answer;
};

/// Collects oracle calls when passed to a reduction.
struct OracleTrace {
  std::vector<OracleCall> calls;

  void record(std::string stage, const Circuit& c, const ProbabilityAssignment& p,
              std::optional<Rational> node, std::optional<std::size_t> k,
              std::optional<std::size_t> l, const Rational& answer) {
    OracleCall call{std::move(stage), k, l, std::move(node), {}, answer};
    for (VarId y : c.universe()) call.probabilities.emplace_back(y, p[y]);
    calls.push_back(std::move(call));
  }
};

/// TSV: stage, k, l, node, answer, probabilities as `var=value` pairs.
inline void write_trace(std::ostream& out, const OracleTrace& trace) {
  out << "stage\tk\tl\tnode\tanswer\tprobabilities\n";
  auto opt = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string("-"); };
  for (const OracleCall& call : trace.calls) {
    out << call.stage << '\t' << opt(call.k) << '\t' << opt(call.l) << '\t'
        << (call.node ? to_string(*call.node) : std::string("-")) << '\t' << to_string(call.answer)
        << '\t';
    for (std::size_t i = 0; i < call.probabilities.size(); ++i)
      out << (i ? "," : "") << call.probabilities[i].first << '='
          << to_string(call.probabilities[i].second);
    out << '\n';
  }
}

/// Wraps an oracle so that every call increments `counter`.
template <class Oracle>
auto counting(Oracle oracle, std::size_t& counter) {
  return [oracle = std::move(oracle), &counter](auto&&... args) {
    ++counter;
    return oracle(std::forward<decltype(args)>(args)...);
  };
}

namespace detail {

// Universe variables take value(x, p_x); the others keep theirs.
template <class F>
ProbabilityAssignment transform_probabilities(const Circuit& c, const ProbabilityAssignment& p, F value) {
  ProbabilityAssignment out = p;
  for (VarId x : c.universe()) out.set(x, value(x, p[x]));
  return out;
}

inline void record(OracleTrace* trace, const char* stage, const Circuit& c,
                   const ProbabilityAssignment& p, std::optional<Rational> node,
                   std::optional<std::size_t> k, std::optional<std::size_t> l, const Rational& answer) {
  if (trace != nullptr) trace->record(stage, c, p, std::move(node), k, l, answer);
}

}  // namespace detail

/// ev_0(phi), ..., ev_n(phi) with n = |V| from n+1 calls to an ev oracle.
///
/// With c_x = 1 - p_x + z p_x and p^z_x = z p_x / c_x, the oracle answer at
/// node z satisfies C_z ev^z(phi) = sum_j z^j ev_j(phi), C_z = prod_x c_x.
inline std::vector<Rational> evs_all_from_ev(const EvOracle& oracle, const Circuit& c,
                                             const ProbabilityAssignment& p,
                                             OracleTrace* trace = nullptr) {
  p.require_covers(c);
  const std::size_t n = c.num_vars();
  const InterpolationGrid grid = default_grid(n);
  std::vector<Rational> values;
  values.reserve(grid.size());
  for (const Rational& z : grid.nodes) {
    Rational scale(1);
    const auto pz = detail::transform_probabilities(c, p, [&](VarId, const Rational& px) {
      const Rational cx = Rational(1) - px + z * px;
      scale *= cx;
      return Rational(z * px / cx);
    });
    const Rational answer = oracle(c, pz);
    detail::record(trace, "evs_from_ev", c, pz, z, std::nullopt, std::nullopt, answer);
    values.push_back(scale * answer);
  }
  return solve_vandermonde(grid, values);
}

/// ev_k(phi) = sum_{|Z| = k} Pi_V(Z) phi(Z); |V| + 1 oracle calls.
inline Rational evs_from_ev(const EvOracle& oracle, const Circuit& c, const ProbabilityAssignment& p,
                            std::size_t k, OracleTrace* trace = nullptr) {
  if (k > c.num_vars()) throw InputError("size index " + std::to_string(k) + " exceeds |V|");
  return evs_all_from_ev(oracle, c, p, trace)[k];
}

/// ennv_{0,l}(phi), ..., ennv_{n,l}(phi) from n+1 calls to an ev_l oracle.
///
/// With c_x = 2 z p_x + 1 - p_x and p^z_x = z p_x / c_x:
/// C_z ev^z_l(phi) = sum_j z^j ennv_{j,l}(phi).
inline std::vector<Rational> envss_column_from_evs(const EvsOracle& oracle, const Circuit& c,
                                                   const ProbabilityAssignment& p, std::size_t l,
                                                   OracleTrace* trace = nullptr) {
  p.require_covers(c);
  const std::size_t n = c.num_vars();
  if (l > n) throw InputError("size index " + std::to_string(l) + " exceeds |V|");
  const InterpolationGrid grid = default_grid(n);
  std::vector<Rational> values;
  values.reserve(grid.size());
  for (const Rational& z : grid.nodes) {
    Rational scale(1);
    const auto pz = detail::transform_probabilities(c, p, [&](VarId, const Rational& px) {
      const Rational cx = 2 * z * px + 1 - px;
      scale *= cx;
      return Rational(z * px / cx);
    });
    const Rational answer = oracle(c, pz, l);
    detail::record(trace, "envss_from_evs", c, pz, z, l, std::nullopt, answer);
    values.push_back(scale * answer);
  }
  return solve_vandermonde(grid, values);
}

/// ennv_{k,l}(phi); |V| + 1 oracle calls.
inline Rational envss_from_evs(const EvsOracle& oracle, const Circuit& c,
                               const ProbabilityAssignment& p, std::size_t k, std::size_t l,
                               OracleTrace* trace = nullptr) {
  if (k > c.num_vars()) throw InputError("size index " + std::to_string(k) + " exceeds |V|");
  return envss_column_from_evs(oracle, c, p, l, trace)[k];
}

/// escore_c(phi, x) from 2 (n+1)^2 calls to an ennv oracle, n = |V| - 1.
///
/// Conditioning is simulated through probabilities: with p_x = 0 the oracle
/// returns ennv_{k,l}(phi_{-x}); with p_x = 1 it returns
/// ennv_{k-1,l}(phi_{-x}) + ennv_{k-1,l-1}(phi_{+x}).
inline Rational escore_from_envss(const EnvssOracle& oracle, const Circuit& c,
                                  const ProbabilityAssignment& p, VarId x,
                                  const CoefficientFunction& cf, OracleTrace* trace = nullptr) {
  if (!c.in_universe(x)) throw InputError("variable " + std::to_string(x) + " is not in the universe");
  p.require_covers(c);
  const std::size_t n = c.num_vars() - 1;
  const ProbabilityAssignment p0 = p.with(x, Rational(0));
  const ProbabilityAssignment p1 = p.with(x, Rational(1));

  std::vector<std::vector<Rational>> minus(n + 1, std::vector<Rational>(n + 1));
  for (std::size_t k = 0; k <= n; ++k)
    for (std::size_t l = 0; l <= n; ++l) {
      minus[k][l] = oracle(c, p0, k, l);
      detail::record(trace, "escore_from_envss", c, p0, std::nullopt, k, l, minus[k][l]);
    }
  // one[i][j] for i, j in [1, n+1]
  std::vector<std::vector<Rational>> one(n + 2, std::vector<Rational>(n + 2));
  for (std::size_t i = 1; i <= n + 1; ++i)
    for (std::size_t j = 1; j <= n + 1; ++j) {
      one[i][j] = oracle(c, p1, i, j);
      detail::record(trace, "escore_from_envss", c, p1, std::nullopt, i, j, one[i][j]);
    }

  const CoefficientTable coefficients(cf, n + 1);
  Rational sum(0);
  for (std::size_t k = 0; k <= n; ++k)
    for (std::size_t l = 0; l <= k; ++l) {
      const Rational shifted = l + 1 <= n ? minus[k][l + 1] : Rational(0);
      const Rational plus = one[k + 1][l + 1] - shifted;
      const Rational diff = plus - minus[k][l];
      if (!is_zero(diff)) sum += coefficients(k + 1, l) * diff;
    }
  return p[x] * sum;
}

/// escore_c(phi, x) from an ev backend: escore_from_envss over
/// envss_from_evs over evs_from_ev. Interpolation results are shared between
/// calls with equal probabilities, so the backend is called O(|V|^3) times.
inline Rational escore_via_ev(const EvOracle& backend, const Circuit& c,
                              const ProbabilityAssignment& p, VarId x,
                              const CoefficientFunction& cf, OracleTrace* trace = nullptr) {
  using Key = std::vector<Rational>;
  std::map<Key, std::vector<Rational>> evs_cache;
  std::map<std::pair<Key, std::size_t>, std::vector<Rational>> envss_cache;

  EvsOracle evs = [&](const Circuit& circuit, const ProbabilityAssignment& q, std::size_t k) {
    auto it = evs_cache.find(q.raw());
    if (it == evs_cache.end())
      it = evs_cache.emplace(q.raw(), evs_all_from_ev(backend, circuit, q, trace)).first;
    return it->second[k];
  };
  EnvssOracle envss = [&](const Circuit& circuit, const ProbabilityAssignment& q, std::size_t k,
                          std::size_t l) {
    if (l > k) return Rational(0);
    auto key = std::make_pair(q.raw(), l);
    auto it = envss_cache.find(key);
    if (it == envss_cache.end())
      it = envss_cache.emplace(key, envss_column_from_evs(evs, circuit, q, l, trace)).first;
    return it->second[k];
  };
  return escore_from_envss(envss, c, p, x, cf, trace);
}

/// ev(phi) = sum_x eshapley(phi, x) + phi(empty set); |V| oracle calls.
inline Rational ev_from_eshapley(const EShapleyOracle& oracle, const Circuit& c,
                                 const ProbabilityAssignment& p, OracleTrace* trace = nullptr) {
  p.require_covers(c);
  Rational total = c.evaluate({}) ? Rational(1) : Rational(0);
  for (VarId x : c.universe()) {
    const Rational answer = oracle(c, p, x);
    detail::record(trace, "ev_from_eshapley", c, p, std::nullopt, std::nullopt, std::nullopt, answer);
    total += answer;
  }
  return total;
}

/// env(phi) from one expected-Banzhaf call on phi & x, x fresh with p_x = 1:
/// the positive cofactor is phi and the negative one is constant false.
inline Rational env_from_ebanzhaf(const EBanzhafOracle& oracle, const Circuit& c,
                                  const ProbabilityAssignment& p, OracleTrace* trace = nullptr) {
  p.require_covers(c);
  const VarId x = static_cast<VarId>(c.universe_size() + 1);
  const Circuit extended = conjoin_fresh_variable(c, x);
  const ProbabilityAssignment px = p.with(x, Rational(1));
  const Rational answer = oracle(extended, px, x);
  detail::record(trace, "env_from_ebanzhaf", extended, px, std::nullopt, std::nullopt, std::nullopt, answer);
  return answer;
}

/// Same through phi | x: the positive cofactor is constant true, whose env is
/// prod_y (1 + p_y), so env(phi) = prod_y (1 + p_y) - oracle answer.
inline Rational env_from_ebanzhaf_disjunction(const EBanzhafOracle& oracle, const Circuit& c,
                                              const ProbabilityAssignment& p,
                                              OracleTrace* trace = nullptr) {
  p.require_covers(c);
  const VarId x = static_cast<VarId>(c.universe_size() + 1);
  const Circuit extended = disjoin_fresh_variable(c, x);
  const ProbabilityAssignment px = p.with(x, Rational(1));
  const Rational answer = oracle(extended, px, x);
  detail::record(trace, "env_from_ebanzhaf", extended, px, std::nullopt, std::nullopt, std::nullopt, answer);
  Rational mass(1);
  for (VarId y : c.universe()) mass *= 1 + p[y];
  return mass - answer;
}

/// ev(phi) from |V'| + 1 env calls, V' the variables with p_x < 1.
///
/// Variables with p_x = 1 are conditioned away first (this leaves ev
/// unchanged). With p^z_x = z p_x / (1 - p_x) and nodes inside (0, 1 - M),
/// M = max p_x: C env^z(phi) = sum_j z^j ev_j(phi), C = prod_x (1 - p_x).
inline Rational ev_from_env(const EnvOracle& oracle, const Circuit& c, const ProbabilityAssignment& p,
                            OracleTrace* trace = nullptr) {
  p.require_covers(c);
  Circuit reduced = c;
  for (VarId x : c.universe())
    if (p[x] == 1) reduced = condition(reduced, x, true);

  Rational max_p(0), scale(1);
  for (VarId x : reduced.universe()) {
    if (p[x] > max_p) max_p = p[x];
    scale *= 1 - p[x];
  }
  const InterpolationGrid grid = default_grid(reduced.num_vars(), Rational(1) - max_p);
  std::vector<Rational> values;
  values.reserve(grid.size());
  for (const Rational& z : grid.nodes) {
    const auto pz = detail::transform_probabilities(
        reduced, p, [&](VarId, const Rational& px) { return Rational(z * px / (1 - px)); });
    const Rational answer = oracle(reduced, pz);
    detail::record(trace, "ev_from_env", reduced, pz, z, std::nullopt, std::nullopt, answer);
    values.push_back(scale * answer);
  }
  Rational total(0);
  for (const Rational& ev_j : solve_vandermonde(grid, values)) total += ev_j;
  return total;
}

/// Concrete oracle backends: direct d-D algorithms and brute force.
namespace backends {

inline EvOracle dd_ev() {
  return [](const Circuit& c, const ProbabilityAssignment& p) { return ev_dd<Rational>(c, p); };
}
inline EvOracle brute_ev(OracleGuard guard = {}) {
  return [guard](const Circuit& c, const ProbabilityAssignment& p) { return shapcirc::brute_ev(c, p, guard); };
}
inline EvsOracle dd_evs() {
  return [](const Circuit& c, const ProbabilityAssignment& p, std::size_t k) {
    return envss_dd<Rational>(c, p).get(k, k);
  };
}
inline EvsOracle brute_evs(OracleGuard guard = {}) {
  return [guard](const Circuit& c, const ProbabilityAssignment& p, std::size_t k) {
    return brute_ev_k(c, p, k, guard);
  };
}
inline EnvssOracle dd_envss() {
  return [](const Circuit& c, const ProbabilityAssignment& p, std::size_t k, std::size_t l) {
    return envss_dd<Rational>(c, p).get(k, l);
  };
}
inline EnvssOracle brute_envss(OracleGuard guard = {}) {
  return [guard](const Circuit& c, const ProbabilityAssignment& p, std::size_t k, std::size_t l) {
    return brute_ennv(c, p, k, l, guard);
  };
}
inline EnvOracle dd_env() {
  return [](const Circuit& c, const ProbabilityAssignment& p) { return env_dd<Rational>(c, p); };
}
inline EnvOracle brute_env(OracleGuard guard = {}) {
  return [guard](const Circuit& c, const ProbabilityAssignment& p) { return shapcirc::brute_env(c, p, guard); };
}
inline EBanzhafOracle dd_ebanzhaf() {
  return [](const Circuit& c, const ProbabilityAssignment& p, VarId x) { return ebanzhaf_dd<Rational>(c, p, x); };
}
inline EScoreOracle dd_escore(CoefficientFunction cf) {
  return [cf = std::move(cf)](const Circuit& c, const ProbabilityAssignment& p, VarId x) {
    return escore_dd<Rational>(c, p, x, cf);
  };
}
inline EScoreOracle brute_escore(CoefficientFunction cf, OracleGuard guard = {}) {
  return [cf = std::move(cf), guard](const Circuit& c, const ProbabilityAssignment& p, VarId x) {
    return shapcirc::brute_escore(c, p, x, cf, guard);
  };
}

}  // namespace backends

}  // namespace shapcirc
