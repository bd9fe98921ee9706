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
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shapcirc/error.hpp"
#include "shapcirc/numeric.hpp"

namespace shapcirc {

// Pascal triangle of exact binomials C(n, k) for n <= max_n.
class BinomialTable {
 public:
  explicit BinomialTable(std::size_t max_n) : max_n_(max_n) {
    rows_.resize(max_n + 1);
    for (std::size_t n = 0; n <= max_n; ++n) {
      rows_[n].resize(n + 1);
      rows_[n][0] = rows_[n][n] = 1;
      for (std::size_t k = 1; k < n; ++k) rows_[n][k] = rows_[n - 1][k - 1] + rows_[n - 1][k];
    }
  }

  std::size_t max_n() const { return max_n_; }

  // Zero outside 0 <= k <= n.
  const Integer& operator()(std::size_t n, std::size_t k) const {
    static const Integer zero = 0;
    if (n > max_n_) throw InputError("binomial C(" + std::to_string(n) + ", .) beyond table size");
    return k <= n ? rows_[n][k] : zero;
  }

 private:
  std::size_t max_n_;
  std::vector<std::vector<Integer>> rows_;
};

/// A coefficient function c(k, l), 0 <= l <= k-1, that turns marginal
/// contributions into a Shapley-like score.
class CoefficientFunction {
 public:
  enum class Kind { Shapley, Banzhaf, PenroseBanzhaf, CustomTable };

  static CoefficientFunction shapley() { return CoefficientFunction(Kind::Shapley); }
  static CoefficientFunction banzhaf() { return CoefficientFunction(Kind::Banzhaf); }
  static CoefficientFunction penrose_banzhaf() { return CoefficientFunction(Kind::PenroseBanzhaf); }

  /// Table indexed by (k, l). Must define every 0 <= l < k <= n_max where
  /// n_max is the largest k present.
  static CoefficientFunction table(std::map<std::pair<std::size_t, std::size_t>, Rational> values,
                                   std::string name = "table") {
    std::size_t n_max = 0;
    for (const auto& [kl, v] : values) {
      if (kl.second >= kl.first)
        throw InputError("coefficient table entry (" + std::to_string(kl.first) + ", " +
                         std::to_string(kl.second) + ") has l >= k");
      n_max = std::max(n_max, kl.first);
    }
    for (std::size_t k = 1; k <= n_max; ++k)
      for (std::size_t l = 0; l < k; ++l)
        if (!values.count({k, l}))
          throw InputError("coefficient table misses entry (" + std::to_string(k) + ", " +
                           std::to_string(l) + ")");
    CoefficientFunction cf(Kind::CustomTable);
    cf.table_ = std::make_shared<const std::map<std::pair<std::size_t, std::size_t>, Rational>>(
        std::move(values));
    cf.n_max_ = n_max;
    cf.name_ = std::move(name);
    return cf;
  }

  /// TSV lines `k<TAB>l<TAB>p/q`; blank lines and `#` comments ignored.
  static CoefficientFunction parse_table(std::string_view text, std::string name = "table") {
    std::map<std::pair<std::size_t, std::size_t>, Rational> values;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream fields(line);
      std::string k_text, l_text, v_text, extra;
      if (!(fields >> k_text)) continue;
      if (!(fields >> l_text >> v_text) || (fields >> extra))
        throw ParseError(line_no, 1, "expected 'k<TAB>l<TAB>value'");
      std::size_t k = 0, l = 0;
      try {
        k = std::stoul(k_text);
        l = std::stoul(l_text);
      } catch (const std::exception&) {
        throw ParseError(line_no, 1, "non-integer index");
      }
      Rational v;
      try {
        v = parse_rational(v_text);
      } catch (const ParseError& e) {
        throw ParseError(line_no, 1, e.what());
      }
      if (!values.emplace(std::make_pair(k, l), v).second)
        throw ParseError(line_no, 1, "duplicate entry");
    }
    return table(std::move(values), std::move(name));
  }

  static CoefficientFunction load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open coefficient table '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_table(buf.str(), "table:" + path);
  }

  /// "shapley" | "banzhaf" | "penrose" | "table:<path>"
  static CoefficientFunction from_spec(std::string_view spec) {
    if (spec == "shapley") return shapley();
    if (spec == "banzhaf") return banzhaf();
    if (spec == "penrose" || spec == "penrose-banzhaf") return penrose_banzhaf();
    if (spec.substr(0, 6) == "table:") return load_table(std::string(spec.substr(6)));
    throw InputError("unknown coefficient function '" + std::string(spec) + "'");
  }

  Kind kind() const { return kind_; }

  std::string name() const {
    switch (kind_) {
      case Kind::Shapley: return "shapley";
      case Kind::Banzhaf: return "banzhaf";
      case Kind::PenroseBanzhaf: return "penrose";
      case Kind::CustomTable: return name_;
    }
    return "?";
  }

  // Largest k the function is defined for (unbounded for builtins).
  std::optional<std::size_t> max_k() const {
    if (kind_ == Kind::CustomTable) return n_max_;
    return std::nullopt;
  }

  /// c(k, l) with Shapley computed as 1 / (k * C(k-1, l)) from `binomials`.
  Rational operator()(std::size_t k, std::size_t l, const BinomialTable& binomials) const {
    if (k < 1 || l >= k)
      throw InputError("coefficient (" + std::to_string(k) + ", " + std::to_string(l) +
                       ") out of range: need 0 <= l <= k-1");
    switch (kind_) {
      case Kind::Shapley: {
        Rational r(Integer(1), Integer(static_cast<unsigned long>(k)) * binomials(k - 1, l));
        r.canonicalize();
        return r;
      }
      case Kind::Banzhaf:
        return Rational(1);
      case Kind::PenroseBanzhaf: {
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(k - 1));
        return Rational(Integer(1), den);
      }
      case Kind::CustomTable: {
        auto it = table_->find({k, l});
        if (it == table_->end())
          throw InputError("coefficient table has no entry (" + std::to_string(k) + ", " +
                           std::to_string(l) + ")");
        return it->second;
      }
    }
    return Rational(0);
  }

  Rational operator()(std::size_t k, std::size_t l) const {
    return (*this)(k, l, BinomialTable(k));
  }

 private:
  explicit CoefficientFunction(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::shared_ptr<const std::map<std::pair<std::size_t, std::size_t>, Rational>> table_;
  std::size_t n_max_ = 0;
  std::string name_;
};

inline Rational coeff(const CoefficientFunction& cf, std::size_t k, std::size_t l) { return cf(k, l); }

/// Dense c(k, l) for 1 <= k <= max_k, indexed [k][l].
class CoefficientTable {
 public:
  CoefficientTable(const CoefficientFunction& cf, std::size_t max_k) : values_(max_k + 1) {
    BinomialTable binomials(max_k);
    for (std::size_t k = 1; k <= max_k; ++k) {
      values_[k].reserve(k);
      for (std::size_t l = 0; l < k; ++l) values_[k].push_back(cf(k, l, binomials));
    }
  }
  const Rational& operator()(std::size_t k, std::size_t l) const { return values_[k][l]; }

 private:
  std::vector<std::vector<Rational>> values_;
};

}  // namespace shapcirc
