#pragma once

// Command-line surface: `cover`, `saturate` and `safety` over the s-expression
// input format. Exit codes: 0 success/safe, 1 unsafe, 2 error, 3 budget.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "calculus.hpp"
#include "core.hpp"
#include "dbcover.hpp"
#include "flatten.hpp"
#include "oracle.hpp"
#include "ordering.hpp"
#include "parser.hpp"
#include "reach.hpp"

namespace covergen {

// (=> <constraint> <literal>) form of a cover clause; bare literal when the
// constraint is empty.
inline std::string clause_sexpr(const ConstrainedLiteral& cl) {
  std::string lit = cl.lit ? cl.lit->str() : "false";
  const auto& eqs = cl.c.eqs();
  if (eqs.empty()) return lit;
  std::string c;
  if (eqs.size() == 1) {
    c = Literal::eq(eqs[0].first, eqs[0].second).str();
  } else {
    c = "(and";
    for (auto& [a, b] : eqs) c += ' ' + Literal::eq(a, b).str();
    c += ')';
  }
  return "(=> " + c + " " + lit + ")";
}

namespace cli {

struct Options {
  std::string file;
  bool dag = false;
  bool trace = false;
  bool no_subsumption = false;
  int check = 0;  // max_dom for the post-hoc cover checks; 0 = off
  int max_iter = 0;
  unsigned seed = 1;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Ordering make_ordering(const Problem& p, const std::vector<Term>& evars,
                              const std::vector<Term>& params) {
  if (p.precedence.empty()) return Ordering(Precedence::defaults(p.sig, evars, params));
  return Ordering(Precedence::from_names(p.sig, evars, params, p.precedence));
}

inline int check_cover(const Problem& p, const std::vector<Literal>& body,
                       const std::vector<Term>& evars, const QFFormula& psi,
                       const Options& o, std::ostream& out) {
  bool residue = check_residue(p.sig, body, psi, p.theory);
  out << "check residue: " << (residue ? "ok" : "FAIL") << "\n";
  ExtOptions eo;
  eo.max_dom = o.check;
  eo.seed = o.seed;
  std::vector<Term> params;
  if (p.cover) params = p.cover->params;
  ExtReport rep = check_extension(p.sig, body, evars, params, psi, p.theory, eo);
  const char* v = rep.verdict == ExtVerdict::Pass ? "pass"
                  : rep.verdict == ExtVerdict::Fail ? "FAIL"
                                                    : "inconclusive";
  out << "check extension: " << v << " (" << rep.models_checked << " models)\n";
  if (rep.verdict == ExtVerdict::Fail && rep.witness)
    out << "counterexample: " << rep.witness->str() << "\n";
  return (residue && rep.verdict != ExtVerdict::Fail) ? 0 : 2;
}

inline int cmd_cover(const Options& o, bool full_trace, std::ostream& out) {
  Problem p = parse_spec(read_file(o.file));
  if (!p.cover) throw std::runtime_error(o.file + ": no cover query");
  FlattenResult fr = flatten(p.cover->body, p.cover->evars);
  Ordering ord = make_ordering(p, fr.evars, p.cover->params);

  if (o.dag) {
    if (!p.theory.empty())
      throw std::runtime_error("--dag needs the empty theory");
    DagCover dc = db_cover(p.sig, fr.lits, fr.evars, ord);
    out << dc.str();
    if (o.check) return check_cover(p, fr.lits, fr.evars, dc.unravel(), o, out);
    return 0;
  }

  SaturateOpts opts;
  opts.subsumption = !o.no_subsumption;
  opts.undef = p.theory.undef;
  Saturation sat = saturate(p.sig, fr.lits, ord, opts);
  if (o.trace || full_trace)
    for (auto& line : sat.trace()) out << "; " << line << "\n";
  if (full_trace) {
    for (auto& cl : sat.saturated_set()) out << cl.str() << "\n";
    return 0;
  }
  auto clauses = sat.cover_clauses(!o.no_subsumption);
  if (clauses.empty())
    out << "true\n";
  else
    for (auto& cl : clauses) out << clause_sexpr(cl) << "\n";
  if (o.check) return check_cover(p, fr.lits, fr.evars, sat.cover_formula(!o.no_subsumption), o, out);
  return 0;
}

inline int cmd_safety(const Options& o, std::ostream& out) {
  Problem p = parse_spec(read_file(o.file));
  if (!p.system) throw std::runtime_error(o.file + ": no transition system");
  int budget = o.max_iter > 0 ? o.max_iter : default_reach_budget();
  ReachResult r = breach(*p.system, budget);
  if (o.trace) {
    out << "; frontier sizes:";
    for (auto n : r.frontier_sizes) out << ' ' << n;
    out << "\n";
  }
  switch (r.verdict) {
    case ReachResult::Verdict::Unsafe:
      out << "unsafe " << r.steps << "\n";
      if (o.check && !certify_unsafe(*p.system, r.steps)) {
        out << "certificate: FAIL (unrolling unsatisfiable)\n";
        return 2;
      }
      if (o.check) out << "certificate: ok\n";
      return 1;
    case ReachResult::Verdict::Safe:
      out << "safe\n";
      out << "invariant " << r.invariant.str() << "\n";
      if (o.check && !certify_safe(*p.system, r.invariant)) {
        out << "certificate: FAIL (invariant not inductive)\n";
        return 2;
      }
      if (o.check) out << "certificate: ok\n";
      return 0;
    default:
      out << "budget exceeded after " << budget << " iterations\n";
      return 3;
  }
}

}  // namespace cli

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cover computation and cover-based backward reachability"};
  app.require_subcommand(1);
  cli::Options o;
  auto add_common = [&](CLI::App* c) {
    c->add_option("file", o.file, "input file")->required();
    c->add_flag("--trace", o.trace, "print the derivation trace");
    c->add_option("--check", o.check, "certify the result up to the given domain size");
    c->add_option("--seed", o.seed, "seed for sampled certification");
  };
  CLI::App* cover = app.add_subcommand("cover", "compute the cover of an existential query");
  add_common(cover);
  cover->add_flag("--dag", o.dag, "print the dag-compressed cover (DB signatures)");
  cover->add_flag("--no-subsumption", o.no_subsumption, "keep subsumed clauses");
  CLI::App* saturate = app.add_subcommand("saturate", "print the full saturation run");
  add_common(saturate);
  saturate->add_flag("--no-subsumption", o.no_subsumption, "keep subsumed clauses");
  CLI::App* safety = app.add_subcommand("safety", "backward-reachability safety check");
  add_common(safety);
  safety->add_option("--max-iter", o.max_iter, "iteration budget (default 64)");

  std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }
  try {
    if (cover->parsed()) return cli::cmd_cover(o, false, out);
    if (saturate->parsed()) return cli::cmd_cover(o, true, out);
    return cli::cmd_safety(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace covergen
