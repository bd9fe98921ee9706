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

// Method selection shared by the CLI and the provenance front end: the same
// quantity through the direct circuit algorithms, the reduction chain, the
// equal-probability counting formula, or brute force.

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shapcirc/circuit.hpp"
#include "shapcirc/coeffs.hpp"
#include "shapcirc/error.hpp"
#include "shapcirc/numeric.hpp"
#include "shapcirc/oracle.hpp"
#include "shapcirc/probability.hpp"
#include "shapcirc/reductions.hpp"
#include "shapcirc/scores.hpp"

namespace shapcirc {

enum class Method { Direct, Reduction, EqualProb, Oracle };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::Direct: return "direct";
    case Method::Reduction: return "reduction";
    case Method::EqualProb: return "equalprob";
    case Method::Oracle: return "oracle";
  }
  return "?";
}

inline Method parse_method(std::string_view name) {
  if (name == "direct") return Method::Direct;
  if (name == "reduction") return Method::Reduction;
  if (name == "equalprob") return Method::EqualProb;
  if (name == "oracle") return Method::Oracle;
  throw InputError("unknown method '" + std::string(name) + "'");
}

struct MethodOptions {
  Method method = Method::Direct;
  bool floating = false;  // double arithmetic; direct and equalprob only
  OracleGuard guard;
  OracleTrace* trace = nullptr;
};

/// A value in either arithmetic mode.
struct Value {
  std::optional<Rational> exact;
  double approx = 0.0;

  static Value of(const Rational& r) { return {r, r.get_d()}; }
  static Value of(double d) { return {std::nullopt, d}; }
};

struct ScoreReport {
  std::string coefficient;
  Method method = Method::Direct;
  bool floating = false;
  std::map<VarId, Value> scores;
  double seconds = 0.0;
  std::size_t max_bits = 0;  // direct method only
};

namespace detail {

inline void check_floating(const MethodOptions& options) {
  if (options.floating && options.method != Method::Direct && options.method != Method::EqualProb)
    throw InputError(std::string("floating-point mode is not available for method ") +
                     to_string(options.method));
}

inline Rational require_uniform(const Circuit& c, const ProbabilityAssignment& p) {
  p.require_covers(c);
  auto common = p.uniform_value(c.universe());
  if (!common) throw InputError("method equalprob needs the same probability for every variable");
  return *common;
}

template <class Number>
Number ev_equal_prob(const Circuit& c, const Rational& p) {
  const auto counts = count_sat_by_size(c);
  const Number prob = number_cast<Number>(p), comp = Number(1) - prob;
  const std::size_t n = c.num_vars();
  Number total(0);
  for (std::size_t l = 0; l <= n; ++l) {
    if (counts[l] == 0) continue;
    Number term = number_cast<Number>(counts[l]);
    for (std::size_t i = 0; i < l; ++i) term *= prob;
    for (std::size_t i = l; i < n; ++i) term *= comp;
    total += term;
  }
  return total;
}

}  // namespace detail

/// ev(phi) through the selected method. The reduction method recovers ev
/// from env oracle calls answered by the direct env algorithm.
inline Value expected_value(const Circuit& c, const ProbabilityAssignment& p,
                            const MethodOptions& options = {}) {
  detail::check_floating(options);
  switch (options.method) {
    case Method::Direct:
      return options.floating ? Value::of(ev_dd<double>(c, p)) : Value::of(ev_dd<Rational>(c, p));
    case Method::Reduction:
      return Value::of(ev_from_env(backends::dd_env(), c, p, options.trace));
    case Method::EqualProb: {
      const Rational common = detail::require_uniform(c, p);
      return options.floating ? Value::of(detail::ev_equal_prob<double>(c, common))
                              : Value::of(detail::ev_equal_prob<Rational>(c, common));
    }
    case Method::Oracle:
      return Value::of(brute_ev(c, p, options.guard));
  }
  return {};
}

/// escore_c(phi, x) through the selected method. The direct method uses the
/// linear env path for Banzhaf coefficients and the table pass otherwise.
inline Value expected_score(const Circuit& c, const ProbabilityAssignment& p, VarId x,
                            const CoefficientFunction& cf, const MethodOptions& options = {},
                            TableStats* stats = nullptr) {
  detail::check_floating(options);
  switch (options.method) {
    case Method::Direct:
      if (cf.kind() == CoefficientFunction::Kind::Banzhaf)
        return options.floating ? Value::of(ebanzhaf_dd<double>(c, p, x))
                                : Value::of(ebanzhaf_dd<Rational>(c, p, x));
      return options.floating ? Value::of(escore_dd<double>(c, p, x, cf, stats))
                              : Value::of(escore_dd<Rational>(c, p, x, cf, stats));
    case Method::Reduction:
      return Value::of(escore_via_ev(backends::dd_ev(), c, p, x, cf, options.trace));
    case Method::EqualProb: {
      const Rational common = detail::require_uniform(c, p);
      return options.floating ? Value::of(escore_equal_prob<double>(c, common, x, cf))
                              : Value::of(escore_equal_prob<Rational>(c, common, x, cf));
    }
    case Method::Oracle:
      return Value::of(brute_escore(c, p, x, cf, options.guard));
  }
  return {};
}

/// Scores of the given variables, in ascending order.
inline ScoreReport score_variables(const Circuit& c, const ProbabilityAssignment& p,
                                   const VarSet& vars, const CoefficientFunction& cf,
                                   const MethodOptions& options = {}) {
  ScoreReport report;
  report.coefficient = cf.name();
  report.method = options.method;
  report.floating = options.floating;
  const auto start = std::chrono::steady_clock::now();
  for (VarId x : vars) {
    TableStats stats;
    report.scores[x] = expected_score(c, p, x, cf, options, &stats);
    report.max_bits = std::max(report.max_bits, stats.max_bits);
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace shapcirc
