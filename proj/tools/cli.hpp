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

// The shapcirc command line. `run` takes its output streams as arguments so
// tests can drive it in-process.

#include <CLI11.hpp>

#include <cstddef>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "shapcirc/shapcirc.hpp"

namespace shapcirc::cli {

enum ExitCode { kOk = 0, kUsage = 1, kInput = 2 };

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string rational_column(const Value& v) { return v.exact ? to_string(*v.exact) : "-"; }
inline std::string decimal_column(const Value& v) {
  return format_decimal(v.exact ? *v.exact : Rational(v.approx));
}

struct ScoreArgs {
  std::string circuit;
  std::string probs;
  std::string method = "direct";
  bool exact = false;
  bool floating = false;
  std::optional<std::size_t> oracle_guard;
  std::string trace;
  std::size_t determinism_budget = 12;
  std::optional<VarId> var;
  bool all = false;
  std::string coeff;
};

namespace detail {

inline void add_method_options(CLI::App* cmd, ScoreArgs& a) {
  cmd->add_option("--method", a.method, "direct | reduction | equalprob | oracle")
      ->check(CLI::IsMember({"direct", "reduction", "equalprob", "oracle"}));
  auto* exact = cmd->add_flag("--exact", a.exact, "exact rational arithmetic (default)");
  auto* floating = cmd->add_flag("--float", a.floating, "double arithmetic for direct algorithms");
  exact->excludes(floating);
  cmd->add_option("--oracle-guard", a.oracle_guard, "largest |V| the brute-force oracle accepts");
  cmd->add_option("--trace-oracle", a.trace, "write reduction oracle calls as TSV to this file");
  cmd->add_option("--determinism-budget", a.determinism_budget,
                  "verify determinism of Or gates with at most this many variables");
}

inline void add_circuit_options(CLI::App* cmd, ScoreArgs& a) {
  cmd->add_option("--circuit", a.circuit, "circuit in DDC format")->required();
  cmd->add_option("--probs", a.probs, "probability file")->required();
  add_method_options(cmd, a);
}

inline void add_target_options(CLI::App* cmd, ScoreArgs& a) {
  auto* var = cmd->add_option("--var", a.var, "variable to score");
  auto* all = cmd->add_flag("--all", a.all, "score every variable of the universe");
  var->excludes(all);
}

inline MethodOptions method_options(const ScoreArgs& a, std::size_t num_vars) {
  MethodOptions options;
  options.method = parse_method(a.method);
  options.floating = a.floating;
  if (a.oracle_guard) {
    if (options.method != Method::Oracle)
      throw InputError("--oracle-guard conflicts with --method " + a.method);
    options.guard.subsets = options.guard.nested = *a.oracle_guard;
  }
  if (!a.trace.empty() && options.method != Method::Reduction)
    throw InputError("--trace-oracle conflicts with --method " + a.method);
  if (options.method == Method::Oracle && num_vars > options.guard.nested)
    throw InputError("--method oracle conflicts with the oracle guard: |V| = " +
                     std::to_string(num_vars) + " exceeds " + std::to_string(options.guard.nested));
  return options;
}

// Rejects circuits that are not decomposable or whose determinism is refuted
// within the budget.
inline void check_dd(const Circuit& c, std::size_t budget) {
  const StructureReport report = analyze_structure(c, budget);
  if (!report.decomposable)
    throw StructureError("not decomposable: And gate " + std::to_string(*report.non_decomposable_gate) +
                         " has inputs sharing a variable");
  if (report.deterministic == Determinism::Refuted) {
    const DeterminismWitness& w = *report.witness;
    std::string vars;
    for (VarId x : w.true_vars) vars += (vars.empty() ? "" : ",") + std::to_string(x);
    throw StructureError("not deterministic: Or gate " + std::to_string(w.gate) + " has inputs " +
                         std::to_string(w.first_input) + " and " + std::to_string(w.second_input) +
                         " both true on {" + vars + "}");
  }
}

inline void write_trace_file(const std::string& path, const OracleTrace& trace) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  write_trace(out, trace);
}

inline void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write " + path);
  file << text;
}

inline int run_ev(const ScoreArgs& a, std::ostream& out) {
  const Circuit c = parse_circuit(read_file(a.circuit));
  const ProbabilityAssignment p = parse_probabilities(read_file(a.probs), c.universe_size());
  check_dd(c, a.determinism_budget);
  MethodOptions options = method_options(a, c.num_vars());
  OracleTrace trace;
  if (!a.trace.empty()) options.trace = &trace;
  const Value v = expected_value(c, p, options);
  write_trace_file(a.trace, trace);
  out << "ev\t" << rational_column(v) << '\t' << decimal_column(v) << '\n';
  return kOk;
}

inline int run_score(const ScoreArgs& a, const CoefficientFunction& cf, std::ostream& out) {
  if (!a.var && !a.all) throw CLI::RequiredError("--var or --all");
  const Circuit c = parse_circuit(read_file(a.circuit));
  const ProbabilityAssignment p = parse_probabilities(read_file(a.probs), c.universe_size());
  check_dd(c, a.determinism_budget);
  MethodOptions options = method_options(a, c.num_vars());
  OracleTrace trace;
  if (!a.trace.empty()) options.trace = &trace;
  VarSet targets;
  if (a.all) {
    targets = c.universe();
  } else {
    if (!c.in_universe(*a.var))
      throw InputError("variable " + std::to_string(*a.var) + " is not in the universe");
    targets = {*a.var};
  }
  const ScoreReport report = score_variables(c, p, targets, cf, options);
  write_trace_file(a.trace, trace);
  for (const auto& [x, v] : report.scores)
    out << x << '\t' << rational_column(v) << '\t' << decimal_column(v) << '\n';
  return kOk;
}

inline std::string yes_no(bool b) { return b ? "true" : "false"; }

inline int run_validate(const std::string& path, std::size_t budget, std::ostream& out,
                        std::ostream& err) {
  const Circuit c = parse_circuit(read_file(path));
  const StructureReport r = analyze_structure(c, budget);
  out << "gates\t" << c.num_gates() << '\n'
      << "wires\t" << c.size() << '\n'
      << "universe\t" << c.num_vars() << '\n'
      << "vars\t" << c.vars().size() << '\n'
      << "decomposable\t" << yes_no(r.decomposable) << '\n'
      << "deterministic\t" << to_string(r.deterministic) << '\n'
      << "smooth\t" << yes_no(r.smooth) << '\n'
      << "binary\t" << yes_no(r.binary) << '\n'
      << "covers_universe\t" << yes_no(r.covers_universe) << '\n'
      << "tight\t" << yes_no(r.tight) << '\n'
      << "unchecked_or_gates\t" << r.unchecked_gates.size() << '\n';
  try {
    check_dd(c, budget);
  } catch (const StructureError& e) {
    err << "shapcirc: " << e.what() << '\n';
    return kInput;
  }
  return kOk;
}

}  // namespace detail

/// Entry point; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Expected Shapley-like scores of Boolean functions given as d-D circuits.", "shapcirc"};
  app.require_subcommand(1);

  ScoreArgs ev_args, shapley_args, banzhaf_args, score_args;
  auto* ev = app.add_subcommand("ev", "expected value of the circuit");
  detail::add_circuit_options(ev, ev_args);

  auto* shapley = app.add_subcommand("shapley", "expected Shapley values");
  detail::add_circuit_options(shapley, shapley_args);
  detail::add_target_options(shapley, shapley_args);

  auto* banzhaf = app.add_subcommand("banzhaf", "expected Banzhaf values");
  detail::add_circuit_options(banzhaf, banzhaf_args);
  detail::add_target_options(banzhaf, banzhaf_args);

  auto* score = app.add_subcommand("score", "expected scores for a coefficient function");
  detail::add_circuit_options(score, score_args);
  detail::add_target_options(score, score_args);
  score->add_option("--coeff", score_args.coeff, "shapley | banzhaf | penrose | table:<path>")->required();

  std::string transform_circuit, transform_output, condition_spec;
  bool do_tighten = false;
  auto* transform = app.add_subcommand("transform", "rewrite a circuit");
  transform->add_option("--circuit", transform_circuit, "circuit in DDC format")->required();
  transform->add_flag("--tighten", do_tighten, "make the circuit tight");
  transform->add_option("--condition", condition_spec, "VAR=0 or VAR=1: substitute a constant");
  transform->add_option("--output", transform_output, "output file (default stdout)");

  std::string validate_circuit;
  std::size_t validate_budget = 16;
  auto* validate = app.add_subcommand("validate", "check decomposability and determinism");
  validate->add_option("--circuit", validate_circuit, "circuit in DDC format")->required();
  validate->add_option("--budget", validate_budget,
                       "verify determinism of Or gates with at most this many variables");

  ScoreArgs prov_args;
  prov_args.coeff = "shapley";
  std::string data_dir, query_file, prov_report = "scores";
  auto* provenance = app.add_subcommand("provenance", "scores of database facts for a query");
  provenance->add_option("--data", data_dir, "directory of CSV tables")->required();
  provenance->add_option("--query", query_file, "query file")->required();
  provenance->add_option("--coeff", prov_args.coeff, "shapley | banzhaf | penrose | table:<path>");
  provenance->add_flag("--all", prov_args.all, "report every fact, not only those in the provenance");
  provenance->add_option("--report", prov_report, "scores | prob | dnf")
      ->check(CLI::IsMember({"scores", "prob", "dnf"}));
  detail::add_method_options(provenance, prov_args);

  auto* oracle = app.add_subcommand("oracle", "brute-force fixtures");
  oracle->require_subcommand(1);
  std::uint64_t seed = 0;
  std::size_t num_vars = 4, depth = 4;
  unsigned long max_den = 64;
  std::string oracle_output;
  auto* random_dd_cmd = oracle->add_subcommand("random-dd", "random d-D circuit in DDC format");
  random_dd_cmd->add_option("--seed", seed)->required();
  random_dd_cmd->add_option("--vars", num_vars)->check(CLI::PositiveNumber);
  random_dd_cmd->add_option("--depth", depth);
  random_dd_cmd->add_option("--output", oracle_output);
  auto* random_probs_cmd = oracle->add_subcommand("random-probs", "random probability file");
  random_probs_cmd->add_option("--seed", seed)->required();
  random_probs_cmd->add_option("--vars", num_vars);
  random_probs_cmd->add_option("--max-den", max_den)->check(CLI::PositiveNumber);
  random_probs_cmd->add_option("--output", oracle_output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (ev->parsed()) return detail::run_ev(ev_args, out);
    if (shapley->parsed()) return detail::run_score(shapley_args, CoefficientFunction::shapley(), out);
    if (banzhaf->parsed()) return detail::run_score(banzhaf_args, CoefficientFunction::banzhaf(), out);
    if (score->parsed())
      return detail::run_score(score_args, CoefficientFunction::from_spec(score_args.coeff), out);

    if (transform->parsed()) {
      if (!do_tighten && condition_spec.empty()) throw CLI::RequiredError("--tighten or --condition");
      Circuit c = parse_circuit(read_file(transform_circuit));
      if (!condition_spec.empty()) {
        const auto eq = condition_spec.find('=');
        const std::string bit = eq == std::string::npos ? "" : condition_spec.substr(eq + 1);
        if (eq == std::string::npos || (bit != "0" && bit != "1"))
          throw CLI::ValidationError("--condition", "expected VAR=0 or VAR=1");
        VarId x = 0;
        try {
          x = static_cast<VarId>(std::stoul(condition_spec.substr(0, eq)));
        } catch (const std::exception&) {
          throw CLI::ValidationError("--condition", "bad variable in '" + condition_spec + "'");
        }
        c = condition(c, x, bit == "1");
      }
      if (do_tighten) c = tighten(c);
      detail::write_text(transform_output, to_ddc(c), out);
      return kOk;
    }

    if (validate->parsed()) return detail::run_validate(validate_circuit, validate_budget, out, err);

    if (provenance->parsed()) {
      const TidDatabase db = load_tid(data_dir);
      const ConjunctiveQuery q = load_query(query_file);
      const ProvenanceDnf dnf = eval_provenance(db, q);
      if (prov_report == "dnf") {
        for (const VarSet& m : dnf.monomials) {
          std::string row;
          for (VarId x : m) row += (row.empty() ? "" : ",") + db.fact(x).id;
          out << "monomial\t" << row << '\n';
        }
        return kOk;
      }
      const Circuit c = dnf_to_dd(dnf, db.num_facts());
      MethodOptions options = detail::method_options(prov_args, c.num_vars());
      OracleTrace trace;
      if (!prov_args.trace.empty()) options.trace = &trace;
      const ProbabilityAssignment p = db.probabilities();
      if (prov_report == "prob") {
        const Value v = expected_value(c, p, options);
        detail::write_trace_file(prov_args.trace, trace);
        out << "prob\t" << rational_column(v) << '\t' << decimal_column(v) << '\n';
        return kOk;
      }
      const VarSet targets = prov_args.all ? c.universe() : c.vars();
      const ScoreReport report =
          score_variables(c, p, targets, CoefficientFunction::from_spec(prov_args.coeff), options);
      detail::write_trace_file(prov_args.trace, trace);
      for (const auto& [x, v] : report.scores)
        out << db.fact(x).id << '\t' << rational_column(v) << '\t' << decimal_column(v) << '\n';
      return kOk;
    }

    if (random_dd_cmd->parsed()) {
      detail::write_text(oracle_output, to_ddc(random_dd(seed, num_vars, depth)), out);
      return kOk;
    }
    if (random_probs_cmd->parsed()) {
      const ProbabilityAssignment p = random_probabilities(seed, num_vars, max_den);
      std::ostringstream text;
      for (VarId x = 1; x <= num_vars; ++x) text << x << ' ' << to_string(p[x]) << '\n';
      detail::write_text(oracle_output, text.str(), out);
      return kOk;
    }
  } catch (const CLI::Error& e) {
    err << "shapcirc: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "shapcirc: " << e.what() << '\n';
    return kInput;
  }
  return kUsage;
}

}  // namespace shapcirc::cli
