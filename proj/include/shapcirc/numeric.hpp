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

// Exact rational arithmetic and the interpolation kernel shared by the
// reductions. Rationals are GMP `mpq_class` values, which GMP keeps in
// canonical form (lowest terms, positive denominator) after every operation.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shapcirc/error.hpp"

namespace shapcirc {

using Integer = mpz_class;
using Rational = mpq_class;

namespace detail {

inline bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char ch) {
           return std::isdigit(ch) != 0;
         });
}

inline Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

// Compares 2*rem with den; used for half-way detection.
inline int cmp_twice(const Integer& rem, const Integer& den) {
  Integer twice = rem * 2;
  return cmp(twice, den);
}

}  // namespace detail

/// Parses `p/q`, an integer, or a finite decimal (`0.4`, `-.25`, `3.`) into
/// an exact rational. Decimals are converted exactly: "0.4" is 2/5.
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
      s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
      s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  const std::string shown(text);
  if (s.empty()) throw ParseError("empty rational");

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den))
      throw ParseError("malformed rational '" + shown + "'");
    Integer d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + shown + "'");
    value = Rational(Integer(std::string(num), 10), d);
    value.canonicalize();
  } else {
    auto dot = s.find('.');
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part =
        dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty())
      throw ParseError("malformed rational '" + shown + "'");
    if ((!int_part.empty() && !detail::all_digits(int_part)) ||
        (!frac_part.empty() && !detail::all_digits(frac_part)))
      throw ParseError("malformed rational '" + shown + "'");
    std::string digits = std::string(int_part) + std::string(frac_part);
    value = Rational(Integer(digits, 10), detail::pow10(frac_part.size()));
    value.canonicalize();
  }
  return negative ? Rational(-value) : value;
}

/// Always `p/q`, including integers ("1/1") and zero ("0/1").
inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Positional decimal rendering with `digits` significant digits, rounded
/// half-to-even. Trailing zeros are kept, never an exponent:
/// 73/125 -> "0.584000000000000".
inline std::string format_decimal(const Rational& r, int digits = 15) {
  if (digits < 1) digits = 1;
  if (r == 0) return "0." + std::string(static_cast<std::size_t>(digits - 1), '0');

  Rational a = abs(r);
  // Find e with 10^e <= a < 10^(e+1).
  long bits = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 2)) -
              static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 2));
  long e = static_cast<long>(std::floor(static_cast<double>(bits) * 0.30102999566398));
  auto ten_pow = [](long k) {
    return k >= 0 ? Rational(detail::pow10(static_cast<unsigned long>(k)))
                  : Rational(Integer(1), detail::pow10(static_cast<unsigned long>(-k)));
  };
  while (ten_pow(e) > a) --e;
  while (ten_pow(e + 1) <= a) ++e;

  // q = round_half_even(a * 10^(digits-1-e)).
  Rational scaled = a * ten_pow(digits - 1 - e);
  Integer q, rem;
  mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), scaled.get_num_mpz_t(),
              scaled.get_den_mpz_t());
  int cmp = detail::cmp_twice(rem, scaled.get_den());
  if (cmp > 0 || (cmp == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;
  if (q == detail::pow10(static_cast<unsigned long>(digits))) {
    q /= 10;
    ++e;
  }

  std::string s = q.get_str();  // exactly `digits` characters
  std::string out;
  if (e >= digits - 1) {
    out = s + std::string(static_cast<std::size_t>(e - (digits - 1)), '0');
  } else if (e >= 0) {
    out = s.substr(0, static_cast<std::size_t>(e + 1)) + "." +
          s.substr(static_cast<std::size_t>(e + 1));
  } else {
    out = "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + s;
  }
  return r < 0 ? "-" + out : out;
}

inline Rational pow(const Rational& base, std::size_t exponent) {
  Rational result(1);
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_zero(double d) { return d == 0.0; }

/// Conversion from exact values into the arithmetic type of a templated
/// algorithm (`Rational` for exact mode, `double` for the float mode).
template <class Number>
Number number_cast(const Rational& r);
template <>
inline Rational number_cast<Rational>(const Rational& r) {
  return r;
}
template <>
inline double number_cast<double>(const Rational& r) {
  return r.get_d();
}

template <class Number>
Number number_cast(const Integer& z);
template <>
inline Rational number_cast<Rational>(const Integer& z) {
  return Rational(z);
}
template <>
inline double number_cast<double>(const Integer& z) {
  return z.get_d();
}

/// Exact value of a result; the identity in exact mode.
inline Rational to_rational(const Rational& r) { return r; }
inline Rational to_rational(double d) { return Rational(d); }

// Distinct evaluation points for polynomial interpolation.
struct InterpolationGrid {
  std::vector<Rational> nodes;
  std::optional<Rational> upper_bound;

  std::size_t size() const { return nodes.size(); }

  // Throws InputError unless nodes are pairwise distinct, positive, and
  // strictly below the bound when one is set.
  void validate() const {
    std::vector<Rational> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InputError("interpolation grid has duplicate nodes");
    for (const Rational& z : nodes) {
      if (sgn(z) <= 0) throw InputError("interpolation node " + to_string(z) + " is not positive");
      if (upper_bound && z >= *upper_bound)
        throw InputError("interpolation node " + to_string(z) + " is outside (0, " +
                         to_string(*upper_bound) + ")");
    }
  }
};

/// n+1 nodes. Unbounded: 1, 2, ..., n+1. Bounded by b: (i+1)*b/(n+2), which
/// lie strictly inside (0, b).
inline InterpolationGrid default_grid(std::size_t n,
                                      const std::optional<Rational>& bound = std::nullopt) {
  InterpolationGrid grid;
  grid.upper_bound = bound;
  if (bound && sgn(*bound) <= 0) throw InputError("interpolation bound must be positive");
  grid.nodes.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    if (bound) {
      Rational z(Integer(static_cast<unsigned long>(i + 1)),
                 Integer(static_cast<unsigned long>(n + 2)));
      z.canonicalize();
      grid.nodes.push_back(z * *bound);
    } else {
      grid.nodes.emplace_back(static_cast<unsigned long>(i + 1));
    }
  }
  return grid;
}

/// Returns X_0..X_n with sum_j X_j * z_i^j = values_i for every node z_i.
///
/// Lagrange-basis reconstruction: with M(z) = prod_i (z - z_i), the i-th basis
/// polynomial is M(z)/(z - z_i) / prod_{j != i}(z_i - z_j). Each quotient is
/// one synthetic division, so the whole solve is O(n^2) exact operations.
inline std::vector<Rational> solve_vandermonde(const InterpolationGrid& grid,
                                               const std::vector<Rational>& values) {
  const std::size_t m = grid.nodes.size();
  if (values.size() != m)
    throw InputError("solve_vandermonde: " + std::to_string(values.size()) + " values for " +
                     std::to_string(m) + " nodes");
  if (m == 0) return {};
  {
    std::vector<Rational> sorted = grid.nodes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InputError("interpolation grid has duplicate nodes");
  }

  // master[j] is the coefficient of z^j in prod_i (z - z_i); degree m.
  std::vector<Rational> master(m + 1);
  master[0] = 1;
  for (std::size_t i = 0; i < m; ++i) {
    // multiply by (z - z_i), in place from the top degree down
    for (std::size_t j = i + 1; j > 0; --j) master[j] = master[j - 1] - grid.nodes[i] * master[j];
    master[0] = -grid.nodes[i] * master[0];
  }

  std::vector<Rational> coeffs(m);
  std::vector<Rational> quotient(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Rational& zi = grid.nodes[i];
    // synthetic division of master by (z - z_i)
    quotient[m - 1] = master[m];
    for (std::size_t j = m - 1; j > 0; --j) quotient[j - 1] = master[j] + zi * quotient[j];
    Rational weight = 1;
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) weight *= zi - grid.nodes[j];
    Rational scale = values[i] / weight;
    if (is_zero(scale)) continue;
    for (std::size_t j = 0; j < m; ++j) coeffs[j] += scale * quotient[j];
  }
  return coeffs;
}

/// Evaluates sum_j coeffs[j] * z^j (Horner).
inline Rational evaluate_polynomial(const std::vector<Rational>& coeffs, const Rational& z) {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

}  // namespace shapcirc
