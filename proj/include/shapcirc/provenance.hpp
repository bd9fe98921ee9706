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

// Tuple-independent probabilistic databases: CSV tables whose rows are
// independent facts, self-join-free Boolean conjunctive queries, their
// provenance as a DNF over fact variables, and compilation of read-once
// provenance to a d-D circuit.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "shapcirc/circuit.hpp"
#include "shapcirc/coeffs.hpp"
#include "shapcirc/error.hpp"
#include "shapcirc/methods.hpp"
#include "shapcirc/numeric.hpp"
#include "shapcirc/probability.hpp"

namespace shapcirc {

/// Records of an RFC 4180 CSV text: comma separated, fields optionally
/// double-quoted, `""` inside quotes for a quote, CRLF or LF line ends.
inline std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, field_started = false;
  std::size_t line = 1;
  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    if (!(row.size() == 1 && row[0].empty())) rows.push_back(std::move(row));
    row.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (ch == '\n') ++line;
        field += ch;
      }
      continue;
    }
    if (ch == '"') {
      if (field_started) throw ParseError(line, 0, "quote inside unquoted field");
      quoted = true;
      field_started = true;
    } else if (ch == ',') {
      end_field();
    } else if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      continue;
    } else if (ch == '\n') {
      end_row();
      ++line;
    } else {
      field += ch;
      field_started = true;
    }
  }
  if (quoted) throw ParseError(line, 0, "unterminated quoted field");
  if (field_started || !row.empty()) end_row();
  return rows;
}

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::string lower(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

inline std::optional<Rational> as_number(const std::string& s) {
  try {
    return parse_rational(s);
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Numeric comparison when both sides are numbers, string comparison
// otherwise. Returns <0, 0 or >0.
inline int compare_values(const std::string& a, const std::string& b) {
  auto na = as_number(a), nb = as_number(b);
  if (na && nb) return cmp(*na, *nb);
  return a.compare(b) < 0 ? -1 : (a == b ? 0 : 1);
}

}  // namespace detail

struct Fact {
  std::string id;  // Table#rownum, rows numbered from 1
  VarId var = 0;
  Rational prob;
  std::vector<std::string> values;  // one per non-prob column
};

struct Table {
  std::string name;
  std::vector<std::string> columns;  // header without the prob column
  std::vector<VarId> rows;
};

/// Tables of independent facts. Fact variables are numbered 1..n in load
/// order (tables in the order added, rows in file order).
class TidDatabase {
 public:
  /// Adds table `name` from CSV text with a header row and a `prob` column.
  void add_table(const std::string& name, std::string_view csv) {
    if (tables_.count(name)) throw InputError("duplicate table '" + name + "'");
    const auto records = parse_csv(csv);
    if (records.empty()) throw InputError("table '" + name + "' has no header");
    Table table{name, {}, {}};
    std::optional<std::size_t> prob_column;
    for (std::size_t i = 0; i < records[0].size(); ++i) {
      const std::string column = detail::trim(records[0][i]);
      if (detail::lower(column) == "prob") {
        if (prob_column) throw InputError("table '" + name + "' has two prob columns");
        prob_column = i;
      } else {
        table.columns.push_back(column);
      }
    }
    if (!prob_column) throw InputError("table '" + name + "' has no prob column");
    for (std::size_t r = 1; r < records.size(); ++r) {
      const auto& record = records[r];
      const std::string where = "table '" + name + "' row " + std::to_string(r);
      if (record.size() != records[0].size())
        throw InputError(where + ": expected " + std::to_string(records[0].size()) + " fields, found " +
                         std::to_string(record.size()));
      Fact fact;
      fact.id = name + "#" + std::to_string(r);
      fact.var = static_cast<VarId>(facts_.size() + 1);
      try {
        fact.prob = parse_rational(detail::trim(record[*prob_column]));
      } catch (const Error& e) {
        throw InputError(where + ": bad probability: " + e.what());
      }
      if (sgn(fact.prob) < 0 || fact.prob > 1)
        throw InputError(where + ": probability " + detail::trim(record[*prob_column]) +
                         " outside [0, 1]");
      for (std::size_t i = 0; i < record.size(); ++i)
        if (i != *prob_column) fact.values.push_back(detail::trim(record[i]));
      table.rows.push_back(fact.var);
      facts_.push_back(std::move(fact));
    }
    order_.push_back(name);
    tables_.emplace(name, std::move(table));
  }

  std::size_t num_facts() const { return facts_.size(); }
  const Fact& fact(VarId x) const {
    if (x == 0 || x > facts_.size()) throw InputError("no fact " + std::to_string(x));
    return facts_[x - 1];
  }
  const std::vector<Fact>& facts() const { return facts_; }
  const Table* find_table(const std::string& name) const {
    auto it = tables_.find(name);
    return it == tables_.end() ? nullptr : &it->second;
  }
  // Table names in load order.
  const std::vector<std::string>& table_names() const { return order_; }

  ProbabilityAssignment probabilities() const {
    ProbabilityAssignment p(facts_.size());
    for (const Fact& f : facts_) p.set(f.var, f.prob);
    return p;
  }

 private:
  std::map<std::string, Table> tables_;
  std::vector<std::string> order_;
  std::vector<Fact> facts_;
};

/// Loads every `*.csv` file of a directory, in ascending file name order;
/// each table is named after its file stem.
inline TidDatabase load_tid(const std::filesystem::path& directory) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(directory)) throw InputError("not a directory: " + directory.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory))
    if (entry.is_regular_file() && detail::lower(entry.path().extension().string()) == ".csv")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  TidDatabase db;
  for (const fs::path& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw InputError("cannot read " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    db.add_table(file.stem().string(), buf.str());
  }
  return db;
}

/// An atom argument: a variable, a constant, or the wildcard `_`.
struct Term {
  enum class Kind { Variable, Constant, Wildcard };
  Kind kind = Kind::Wildcard;
  std::string text;
};

struct Atom {
  std::string relation;
  std::vector<Term> terms;
};

enum class CompareOp { Less, LessEqual, Equal, GreaterEqual, Greater };

struct Filter {
  std::string variable;
  CompareOp op = CompareOp::Equal;
  std::string constant;
};

/// Boolean self-join-free conjunctive query with constant filters.
struct ConjunctiveQuery {
  std::vector<Atom> atoms;
  std::vector<Filter> filters;
};

namespace detail {

class QueryLexer {
 public:
  QueryLexer(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }
  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }
  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected an identifier");
    return std::string(text_.substr(start, pos_ - start));
  }
  // A quoted string or a bare token up to a delimiter.
  Term term() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '"') return {Term::Kind::Constant, quoted()};
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    const std::string tok(text_.substr(start, pos_ - start));
    if (tok.empty()) fail("expected a term");
    if (tok == "_") return {Term::Kind::Wildcard, tok};
    if (as_number(tok)) return {Term::Kind::Constant, tok};
    if (!(std::isalpha(static_cast<unsigned char>(tok[0])) || tok[0] == '_'))
      fail("bad term '" + tok + "'");
    for (char ch : tok)
      if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) fail("bad term '" + tok + "'");
    return {Term::Kind::Variable, tok};
  }
  std::string quoted() {
    expect("\"");
    std::string out;
    while (pos_ < text_.size()) {
      const char ch = text_[pos_++];
      if (ch == '"') {
        if (pos_ < text_.size() && text_[pos_] == '"') {
          out += '"';
          ++pos_;
          continue;
        }
        return out;
      }
      out += ch;
    }
    fail("unterminated string");
    return out;
  }
  std::string rest() {
    skip_space();
    std::string out = trim(text_.substr(pos_));
    pos_ = text_.size();
    return out;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, pos_ + 1, msg); }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the query format:
///
///   q :- Students(id, name, age), Grades(id, grade)
///   filter age < 23
///   filter grade >= 85
///
/// Terms are variables, numbers, double-quoted strings or `_`. Filter
/// operators are <, <=, =, >=, >. Blank lines and `#` comments are ignored.
inline ConjunctiveQuery parse_query(std::string_view text) {
  ConjunctiveQuery q;
  bool have_head = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    detail::QueryLexer lex(line, line_no);
    if (!have_head) {
      lex.identifier();
      if (lex.accept("(")) lex.expect(")");
      lex.expect(":-");
      do {
        Atom atom;
        atom.relation = lex.identifier();
        lex.expect("(");
        if (!lex.accept(")")) {
          do atom.terms.push_back(lex.term());
          while (lex.accept(","));
          lex.expect(")");
        }
        q.atoms.push_back(std::move(atom));
      } while (lex.accept(","));
      if (!lex.done()) lex.fail("unexpected text after the query body");
      have_head = true;
      continue;
    }
    if (lex.identifier() != "filter") lex.fail("expected 'filter'");
    Filter f;
    f.variable = lex.identifier();
    if (lex.accept("<=")) f.op = CompareOp::LessEqual;
    else if (lex.accept(">=")) f.op = CompareOp::GreaterEqual;
    else if (lex.accept("<")) f.op = CompareOp::Less;
    else if (lex.accept(">")) f.op = CompareOp::Greater;
    else if (lex.accept("=")) f.op = CompareOp::Equal;
    else lex.fail("expected a comparison operator");
    const std::string rest = lex.rest();
    if (rest.empty()) lex.fail("filter needs a constant");
    if (rest[0] == '"') {
      detail::QueryLexer str(rest, line_no);
      f.constant = str.quoted();
      if (!str.done()) str.fail("unexpected text after the constant");
    } else {
      if (rest.find_first_of(" \t") != std::string::npos) lex.fail("unexpected text after the constant");
      f.constant = rest;
    }
    q.filters.push_back(std::move(f));
  }
  if (!have_head) throw ParseError("query has no body");
  if (q.atoms.empty()) throw ParseError("query has no atoms");

  std::set<std::string> relations, variables;
  for (const Atom& a : q.atoms) {
    if (!relations.insert(a.relation).second)
      throw InputError("relation '" + a.relation + "' occurs twice; queries must be self-join-free");
    for (const Term& t : a.terms)
      if (t.kind == Term::Kind::Variable) variables.insert(t.text);
  }
  for (const Filter& f : q.filters)
    if (!variables.count(f.variable))
      throw InputError("filter variable '" + f.variable + "' does not occur in the query");
  return q;
}

inline ConjunctiveQuery load_query(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_query(buf.str());
}

/// Provenance as a set of monomials, each a set of fact variables.
struct ProvenanceDnf {
  std::vector<VarSet> monomials;  // sorted, no duplicates
};

/// Nested-loop evaluation of q over db: every satisfying combination of rows
/// contributes the monomial of its facts.
inline ProvenanceDnf eval_provenance(const TidDatabase& db, const ConjunctiveQuery& q) {
  std::vector<const Table*> tables;
  for (const Atom& a : q.atoms) {
    const Table* t = db.find_table(a.relation);
    if (t == nullptr) throw InputError("unknown relation '" + a.relation + "'");
    if (t->columns.size() != a.terms.size())
      throw InputError("relation '" + a.relation + "' has arity " + std::to_string(t->columns.size()) +
                       ", query uses " + std::to_string(a.terms.size()));
    tables.push_back(t);
  }

  auto satisfies = [](const std::string& value, CompareOp op, const std::string& constant) {
    const int c = detail::compare_values(value, constant);
    switch (op) {
      case CompareOp::Less: return c < 0;
      case CompareOp::LessEqual: return c <= 0;
      case CompareOp::Equal: return c == 0;
      case CompareOp::GreaterEqual: return c >= 0;
      case CompareOp::Greater: return c > 0;
    }
    return false;
  };

  std::set<VarSet> found;
  std::map<std::string, std::string> binding;
  VarSet chosen;
  auto search = [&](auto& self, std::size_t depth) -> void {
    if (depth == q.atoms.size()) {
      for (const Filter& f : q.filters)
        if (!satisfies(binding.at(f.variable), f.op, f.constant)) return;
      VarSet m = chosen;
      std::sort(m.begin(), m.end());
      found.insert(std::move(m));
      return;
    }
    const Atom& atom = q.atoms[depth];
    for (VarId row : tables[depth]->rows) {
      const Fact& fact = db.fact(row);
      std::vector<std::string> bound_here;
      bool ok = true;
      for (std::size_t i = 0; i < atom.terms.size() && ok; ++i) {
        const Term& t = atom.terms[i];
        const std::string& v = fact.values[i];
        if (t.kind == Term::Kind::Constant) {
          ok = detail::compare_values(v, t.text) == 0;
        } else if (t.kind == Term::Kind::Variable) {
          auto it = binding.find(t.text);
          if (it == binding.end()) {
            binding.emplace(t.text, v);
            bound_here.push_back(t.text);
          } else {
            ok = detail::compare_values(it->second, v) == 0;
          }
        }
      }
      if (ok) {
        chosen.push_back(row);
        self(self, depth + 1);
        chosen.pop_back();
      }
      for (const std::string& name : bound_here) binding.erase(name);
    }
  };
  search(search, 0);
  return {std::vector<VarSet>(found.begin(), found.end())};
}

/// d-D circuit for a DNF with pairwise variable-disjoint monomials:
/// false for no monomial, a conjunction for one, !(!m_1 & ... & !m_r)
/// otherwise.
inline Circuit dnf_to_dd(const ProvenanceDnf& dnf, std::size_t universe_size) {
  VarSet seen;
  for (const VarSet& m : dnf.monomials) {
    if (!var_disjoint(seen, m))
      throw StructureError("monomials share a variable; not decomposable, external compilation is out of scope");
    seen = var_union(seen, m);
  }
  CircuitBuilder b(universe_size);
  auto monomial = [&](const VarSet& m) -> GateId {
    if (m.empty()) return b.constant(true);
    if (m.size() == 1) return b.variable(m[0]);
    std::vector<GateId> inputs;
    for (VarId x : m) inputs.push_back(b.variable(x));
    return b.add(Gate::conjunction(inputs));
  };
  if (dnf.monomials.empty()) return std::move(b).build(b.constant(false));
  if (dnf.monomials.size() == 1) {
    const GateId out = monomial(dnf.monomials[0]);
    return std::move(b).build(out);
  }
  std::vector<GateId> negated;
  for (const VarSet& m : dnf.monomials) negated.push_back(b.negation(monomial(m)));
  const GateId all = b.add(Gate::conjunction(negated));
  const GateId out = b.negation(all);
  return std::move(b).build(out);
}

/// Expected score of every fact of db for q. Facts outside the provenance
/// score 0.
inline ScoreReport fact_escore(const TidDatabase& db, const ConjunctiveQuery& q,
                               const CoefficientFunction& cf, const MethodOptions& options = {}) {
  const Circuit c = dnf_to_dd(eval_provenance(db, q), db.num_facts());
  return score_variables(c, db.probabilities(), c.universe(), cf, options);
}

}  // namespace shapcirc
