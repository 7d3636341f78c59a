#pragma once

// S-expression input format for cover queries and transition systems.
//
//   (signature (sorts S U) (functions (f (S) U) ...) (relations (R (S U)) ...))
//   (theory (undef-axioms))                       ; optional
//   (theory (axiom (forall (x S) <formula>)))     ; optional, repeatable
//   (precedence e t y1 ...)                       ; optional symbol ranking
//   (params (y1 S) ...)                           ; optional; else inferred
//   (cover (exists ((e1 S) ...)) <literal or (and <literal>*)>)
// or
//   (system (vars (x1 S) ...) (init F) (trans F) (unsafe F))
//
// In trans, the post-state copy of x1 is written x1'. Parameters that are
// not declared get their sort inferred from the positions they occur in.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"
#include "reach.hpp"
#include "solver.hpp"

namespace covergen {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int l, int c)
      : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
        line(l),
        col(c) {}
};

namespace sexpr {

struct Node {
  bool atom = true;
  std::string tok;  // atoms only
  std::vector<Node> kids;
  int line = 1, col = 1;

  const Node& kid(size_t i, const char* what) const {
    if (atom || i >= kids.size())
      throw ParseError(std::string("expected ") + what, line, col);
    return kids[i];
  }
  const std::string& sym(const char* what) const {
    if (!atom) throw ParseError(std::string("expected ") + what, line, col);
    return tok;
  }
  bool is(const std::string& head) const {
    return !atom && !kids.empty() && kids[0].atom && kids[0].tok == head;
  }
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) {}

  std::vector<Node> parse_all() {
    std::vector<Node> out;
    skip();
    while (pos_ < s_.size()) {
      out.push_back(parse());
      skip();
    }
    if (out.empty()) throw ParseError("empty input", 1, 1);
    return out;
  }

 private:
  Node parse() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", line_, col_);
    Node n;
    n.line = line_;
    n.col = col_;
    if (s_[pos_] == '(') {
      advance();
      n.atom = false;
      while (true) {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unclosed '('", n.line, n.col);
        if (s_[pos_] == ')') {
          advance();
          return n;
        }
        n.kids.push_back(parse());
      }
    }
    if (s_[pos_] == ')') throw ParseError("unmatched ')'", line_, col_);
    while (pos_ < s_.size() && !isspace(static_cast<unsigned char>(s_[pos_])) &&
           s_[pos_] != '(' && s_[pos_] != ')' && s_[pos_] != ';')
      n.tok += s_[pos_], advance();
    return n;
  }

  void skip() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == ';') {
        while (pos_ < s_.size() && s_[pos_] != '\n') advance();
      } else if (isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

}  // namespace sexpr

struct CoverQuery {
  std::vector<Term> evars;
  std::vector<Term> params;
  std::vector<Literal> body;
};

struct Problem {
  Signature sig;
  Theory theory;
  std::vector<std::string> precedence;
  std::optional<CoverQuery> cover;
  std::optional<TransitionSystem> system;
};

namespace detail {

class SpecParser {
 public:
  Problem run(const std::string& text) {
    auto forms = sexpr::Lexer(text).parse_all();
    for (auto& f : forms) {
      const std::string& head = f.kid(0, "form").sym("form head");
      if (head == "signature")
        parse_signature(f);
      else if (head == "theory")
        parse_theory(f);
      else if (head == "precedence")
        parse_precedence(f);
      else if (head == "params")
        parse_params(f);
      else if (head == "cover")
        parse_cover(f);
      else if (head == "system")
        parse_system(f);
      else
        throw ParseError("unknown form: " + head, f.line, f.col);
    }
    return std::move(p_);
  }

 private:
  void need_sort(const sexpr::Node& n) {
    if (!p_.sig.has_sort(n.sym("sort name")))
      throw ParseError("undeclared sort: " + n.tok, n.line, n.col);
  }

  void parse_signature(const sexpr::Node& f) {
    for (size_t i = 1; i < f.kids.size(); ++i) {
      const sexpr::Node& sec = f.kids[i];
      const std::string& h = sec.kid(0, "signature section").sym("section head");
      if (h == "sorts") {
        for (size_t j = 1; j < sec.kids.size(); ++j)
          p_.sig.add_sort(sec.kids[j].sym("sort name"));
      } else if (h == "functions") {
        for (size_t j = 1; j < sec.kids.size(); ++j) {
          const sexpr::Node& d = sec.kids[j];
          const std::string& name = d.kid(0, "function declaration").sym("function name");
          const sexpr::Node& args = d.kid(1, "argument sorts");
          if (args.atom) throw ParseError("expected argument sort list", args.line, args.col);
          std::vector<std::string> as;
          for (auto& a : args.kids) {
            need_sort(a);
            as.push_back(a.tok);
          }
          const sexpr::Node& res = d.kid(2, "result sort");
          need_sort(res);
          p_.sig.add_function(name, as, res.tok);
        }
      } else if (h == "relations") {
        for (size_t j = 1; j < sec.kids.size(); ++j) {
          const sexpr::Node& d = sec.kids[j];
          const std::string& name = d.kid(0, "relation declaration").sym("relation name");
          const sexpr::Node& args = d.kid(1, "argument sorts");
          if (args.atom) throw ParseError("expected argument sort list", args.line, args.col);
          std::vector<std::string> as;
          for (auto& a : args.kids) {
            need_sort(a);
            as.push_back(a.tok);
          }
          p_.sig.add_relation(name, as);
        }
      } else {
        throw ParseError("unknown signature section: " + h, sec.line, sec.col);
      }
    }
  }

  void parse_theory(const sexpr::Node& f) {
    for (size_t i = 1; i < f.kids.size(); ++i) {
      const sexpr::Node& sec = f.kids[i];
      const std::string& h = sec.kid(0, "theory item").sym("theory item head");
      if (h == "undef-axioms") {
        p_.theory.undef = true;
      } else if (h == "axiom") {
        const sexpr::Node& fa = sec.kid(1, "(forall (x S) <formula>)");
        if (!fa.is("forall"))
          throw ParseError("expected (forall (x S) <formula>)", fa.line, fa.col);
        const sexpr::Node& binder = fa.kid(1, "binder");
        const std::string& vn = binder.kid(0, "bound variable").sym("variable name");
        const sexpr::Node& vs = binder.kid(1, "bound variable sort");
        need_sort(vs);
        Term x = Term::var(VarKind::Parameter, 0, vn, vs.tok);
        std::map<std::string, Term> scope{{vn, x}};
        p_.theory.axioms.push_back({x, parse_formula(fa.kid(2, "axiom body"), scope)});
      } else {
        throw ParseError("unknown theory item: " + h, sec.line, sec.col);
      }
    }
  }

  void parse_precedence(const sexpr::Node& f) {
    for (size_t i = 1; i < f.kids.size(); ++i)
      p_.precedence.push_back(f.kids[i].sym("symbol name"));
  }

  void parse_params(const sexpr::Node& f) {
    for (size_t i = 1; i < f.kids.size(); ++i) {
      const sexpr::Node& d = f.kids[i];
      const std::string& n = d.kid(0, "parameter declaration").sym("parameter name");
      const sexpr::Node& s = d.kid(1, "parameter sort");
      need_sort(s);
      declare_param(n, s.tok, d.line, d.col);
    }
  }

  void declare_param(const std::string& name, const std::string& sort, int line, int col) {
    auto it = vars_.find(name);
    if (it != vars_.end()) {
      if (it->second.sort() != sort)
        throw ParseError("conflicting sorts for " + name + ": " + it->second.sort() + " vs " +
                             sort,
                         line, col);
      return;
    }
    Term t = Term::var(VarKind::Parameter, 0, name, sort);
    vars_[name] = t;
    param_order_.push_back(t);
  }

  void parse_cover(const sexpr::Node& f) {
    if (p_.cover || p_.system)
      throw ParseError("only one cover or system form is allowed", f.line, f.col);
    CoverQuery q;
    const sexpr::Node& ex = f.kid(1, "(exists ((e S) ...))");
    if (!ex.is("exists")) throw ParseError("expected (exists ((e S) ...))", ex.line, ex.col);
    const sexpr::Node& binders = ex.kid(1, "existential binders");
    if (binders.atom) throw ParseError("expected binder list", binders.line, binders.col);
    for (auto& b : binders.kids) {
      const std::string& n = b.kid(0, "binder").sym("existential name");
      const sexpr::Node& s = b.kid(1, "existential sort");
      need_sort(s);
      Term e = Term::var(VarKind::Existential, static_cast<int>(q.evars.size()) + 1, n, s.tok);
      q.evars.push_back(e);
      vars_[n] = e;
    }
    const sexpr::Node& body = f.kid(2, "cover body");
    std::vector<const sexpr::Node*> lits;
    if (body.is("and"))
      for (size_t i = 1; i < body.kids.size(); ++i) lits.push_back(&body.kids[i]);
    else
      lits.push_back(&body);
    // sort inference for undeclared parameters: two passes over the atoms
    for (int pass = 0; pass < 2; ++pass)
      for (auto* l : lits) infer_literal(*l);
    resolve_leftovers();
    for (auto* l : lits) q.body.push_back(parse_literal(*l));
    for (auto& t : param_order_) q.params.push_back(t);
    p_.cover = std::move(q);
  }

  void parse_system(const sexpr::Node& f) {
    if (p_.cover || p_.system)
      throw ParseError("only one cover or system form is allowed", f.line, f.col);
    TransitionSystem sys;
    sys.sig = p_.sig;
    sys.theory = p_.theory;
    bool saw_init = false, saw_trans = false, saw_unsafe = false;
    const sexpr::Node& vars = f.kid(1, "(vars (x S) ...)");
    if (!vars.is("vars")) throw ParseError("expected (vars (x S) ...)", vars.line, vars.col);
    for (size_t i = 1; i < vars.kids.size(); ++i) {
      const sexpr::Node& d = vars.kids[i];
      const std::string& n = d.kid(0, "state variable").sym("variable name");
      const sexpr::Node& s = d.kid(1, "state variable sort");
      need_sort(s);
      Term v = Term::var(VarKind::Parameter, 0, n, s.tok);
      sys.vars.push_back(v);
      vars_[n] = v;
      vars_[n + "'"] = primed(v);
    }
    std::map<std::string, Term> scope = vars_;
    for (size_t i = 2; i < f.kids.size(); ++i) {
      const sexpr::Node& sec = f.kids[i];
      const std::string& h = sec.kid(0, "system section").sym("section head");
      const sexpr::Node& body = sec.kid(1, "formula");
      if (h == "init") {
        sys.init = parse_formula(body, scope);
        saw_init = true;
      } else if (h == "trans") {
        sys.trans = parse_formula(body, scope);
        saw_trans = true;
      } else if (h == "unsafe") {
        sys.unsafe = parse_formula(body, scope);
        saw_unsafe = true;
      } else {
        throw ParseError("unknown system section: " + h, sec.line, sec.col);
      }
    }
    if (!saw_init || !saw_trans || !saw_unsafe)
      throw ParseError("system needs init, trans and unsafe sections", f.line, f.col);
    p_.system = std::move(sys);
  }

  // --- terms and literals over the cover-query scope (vars_) ---

  bool is_undef_name(const std::string& n) const {
    return n.rfind("undef.", 0) == 0 && p_.sig.has_sort(n.substr(6));
  }

  // record what sort an atom must have, declaring new parameters on the way
  std::string infer_term(const sexpr::Node& n, const std::string& expect) {
    if (n.atom) {
      auto it = vars_.find(n.tok);
      if (it != vars_.end()) return it->second.sort();
      if (p_.sig.has_function(n.tok)) return p_.sig.function(n.tok).result;
      if (is_undef_name(n.tok)) return n.tok.substr(6);
      if (!expect.empty()) {
        declare_param(n.tok, expect, n.line, n.col);
        return expect;
      }
      pending_.insert(n.tok);
      return "";
    }
    const std::string& fn = n.kid(0, "term").sym("function name");
    if (!p_.sig.has_function(fn))
      throw ParseError("undeclared function: " + fn, n.line, n.col);
    const FuncDecl& d = p_.sig.function(fn);
    if (n.kids.size() - 1 != d.args.size())
      throw ParseError("arity mismatch for " + fn, n.line, n.col);
    for (size_t i = 0; i < d.args.size(); ++i) infer_term(n.kids[i + 1], d.args[i]);
    return d.result;
  }

  void infer_literal(const sexpr::Node& n) {
    if (n.is("not")) {
      infer_literal(n.kid(1, "negated atom"));
      return;
    }
    if (n.is("=")) {
      std::string a = infer_term(n.kid(1, "left operand"), "");
      std::string b = infer_term(n.kid(2, "right operand"), a);
      if (a.empty() && !b.empty()) infer_term(n.kid(1, "left operand"), b);
      return;
    }
    if (!n.atom && !n.kids.empty() && n.kids[0].atom &&
        p_.sig.has_relation(n.kids[0].tok)) {
      const RelDecl& d = p_.sig.relation(n.kids[0].tok);
      if (n.kids.size() - 1 != d.args.size())
        throw ParseError("arity mismatch for " + n.kids[0].tok, n.line, n.col);
      for (size_t i = 0; i < d.args.size(); ++i) infer_term(n.kids[i + 1], d.args[i]);
      return;
    }
    throw ParseError("expected a literal", n.line, n.col);
  }

  void resolve_leftovers() {
    for (auto& name : pending_) {
      if (vars_.count(name)) continue;
      if (p_.sig.sorts().size() == 1) {
        declare_param(name, p_.sig.sorts()[0], 1, 1);
        continue;
      }
      throw ParseError("cannot infer the sort of " + name +
                           " (declare it in a (params ...) form)",
                       1, 1);
    }
    pending_.clear();
  }

  Term parse_term(const sexpr::Node& n) {
    if (n.atom) {
      auto it = vars_.find(n.tok);
      if (it != vars_.end()) return it->second;
      if (p_.sig.has_function(n.tok)) {
        const FuncDecl& d = p_.sig.function(n.tok);
        if (!d.args.empty())
          throw ParseError(n.tok + " takes arguments", n.line, n.col);
        return Term::app_raw(n.tok, d.result, {});
      }
      if (is_undef_name(n.tok)) return undef_const(n.tok.substr(6));
      throw ParseError("unknown symbol: " + n.tok, n.line, n.col);
    }
    const std::string& fn = n.kid(0, "term").sym("function name");
    if (!p_.sig.has_function(fn))
      throw ParseError("undeclared function: " + fn, n.line, n.col);
    std::vector<Term> args;
    for (size_t i = 1; i < n.kids.size(); ++i) args.push_back(parse_term(n.kids[i]));
    try {
      return Term::app(p_.sig, fn, args);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), n.line, n.col);
    }
  }

  Literal parse_atom(const sexpr::Node& n, bool positive) {
    if (n.is("=")) {
      Term a = parse_term(n.kid(1, "left operand"));
      Term b = parse_term(n.kid(2, "right operand"));
      if (a.sort() != b.sort())
        throw ParseError("ill-sorted equality: " + a.sort() + " vs " + b.sort(), n.line,
                         n.col);
      return positive ? Literal::eq(a, b) : Literal::neq(a, b);
    }
    if (!n.atom && !n.kids.empty() && n.kids[0].atom &&
        p_.sig.has_relation(n.kids[0].tok)) {
      std::vector<Term> args;
      for (size_t i = 1; i < n.kids.size(); ++i) args.push_back(parse_term(n.kids[i]));
      try {
        return positive ? Literal::rel(p_.sig, n.kids[0].tok, args)
                        : Literal::nrel(p_.sig, n.kids[0].tok, args);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), n.line, n.col);
      }
    }
    throw ParseError("expected an atom", n.line, n.col);
  }

  Literal parse_literal(const sexpr::Node& n) {
    if (n.is("not")) return parse_atom(n.kid(1, "negated atom"), false);
    return parse_atom(n, true);
  }

  QFFormula parse_formula(const sexpr::Node& n, std::map<std::string, Term>& scope) {
    std::swap(scope, vars_);  // formulas resolve symbols against their own scope
    struct Restore {
      std::map<std::string, Term>&a, &b;
      ~Restore() { std::swap(a, b); }
    } restore{scope, vars_};
    return parse_formula_rec(n);
  }

  QFFormula parse_formula_rec(const sexpr::Node& n) {
    if (n.atom && n.tok == "true") return QFFormula::verum();
    if (n.atom && n.tok == "false") return QFFormula::falsum();
    if (n.is("and") || n.is("or")) {
      std::vector<QFFormula> subs;
      for (size_t i = 1; i < n.kids.size(); ++i) subs.push_back(parse_formula_rec(n.kids[i]));
      return n.is("and") ? QFFormula::conj(std::move(subs)) : QFFormula::disj(std::move(subs));
    }
    if (n.is("not")) return QFFormula::negate(parse_formula_rec(n.kid(1, "formula")));
    return QFFormula::lit(parse_atom(n, true));
  }

  Problem p_;
  std::map<std::string, Term> vars_;
  std::vector<Term> param_order_;
  std::set<std::string> pending_;
};

}  // namespace detail

inline Problem parse_spec(const std::string& text) { return detail::SpecParser().run(text); }

}  // namespace covergen
