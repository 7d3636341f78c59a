#pragma once

// Core data model: multi-sorted signatures, ground terms over existential /
// parameter constants, literals, constraints and quantifier-free formulae.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace covergen {

struct FuncDecl {
  std::string name;
  std::vector<std::string> args;
  std::string result;
};

struct RelDecl {
  std::string name;
  std::vector<std::string> args;
};

class Signature {
 public:
  void add_sort(const std::string& s) {
    if (sort_set_.count(s)) throw std::invalid_argument("duplicate sort: " + s);
    sort_set_.insert(s);
    sorts_.push_back(s);
  }

  void add_function(const std::string& name, const std::vector<std::string>& args,
                    const std::string& result) {
    check_fresh(name);
    for (auto& a : args) check_sort(a);
    check_sort(result);
    func_idx_[name] = funcs_.size();
    funcs_.push_back({name, args, result});
  }

  void add_relation(const std::string& name, const std::vector<std::string>& args) {
    check_fresh(name);
    for (auto& a : args) check_sort(a);
    rel_idx_[name] = rels_.size();
    rels_.push_back({name, args});
  }

  bool has_sort(const std::string& s) const { return sort_set_.count(s) != 0; }
  bool has_function(const std::string& n) const { return func_idx_.count(n) != 0; }
  bool has_relation(const std::string& n) const { return rel_idx_.count(n) != 0; }

  const FuncDecl& function(const std::string& n) const {
    auto it = func_idx_.find(n);
    if (it == func_idx_.end()) throw std::invalid_argument("unknown function: " + n);
    return funcs_[it->second];
  }
  const RelDecl& relation(const std::string& n) const {
    auto it = rel_idx_.find(n);
    if (it == rel_idx_.end()) throw std::invalid_argument("unknown relation: " + n);
    return rels_[it->second];
  }

  const std::vector<std::string>& sorts() const { return sorts_; }
  const std::vector<FuncDecl>& functions() const { return funcs_; }
  const std::vector<RelDecl>& relations() const { return rels_; }

  // DB signature: every function symbol unary (0-ary constants tolerated).
  bool is_db() const {
    for (auto& f : funcs_)
      if (f.args.size() > 1) return false;
    return true;
  }

 private:
  void check_fresh(const std::string& n) {
    if (func_idx_.count(n) || rel_idx_.count(n))
      throw std::invalid_argument("duplicate symbol: " + n);
  }
  void check_sort(const std::string& s) const {
    if (!sort_set_.count(s)) throw std::invalid_argument("undeclared sort: " + s);
  }

  std::vector<std::string> sorts_;
  std::set<std::string> sort_set_;
  std::vector<FuncDecl> funcs_;
  std::vector<RelDecl> rels_;
  std::unordered_map<std::string, size_t> func_idx_;
  std::unordered_map<std::string, size_t> rel_idx_;
};

enum class VarKind { Existential, Parameter };

namespace detail {

struct TermNode {
  bool is_var = false;
  VarKind kind = VarKind::Parameter;
  int var_index = 0;
  std::string sym;   // variable name or function symbol
  std::string sort;  // result sort
  std::vector<const TermNode*> args;
  std::string repr;
  int ecount = 0;
  int size = 1;
  uint64_t id = 0;
};

// Process-wide hash-consing arena; interning is observationally pure.
class TermArena {
 public:
  static TermArena& instance() {
    static TermArena a;
    return a;
  }

  const TermNode* intern(TermNode&& n, const std::string& key) {
    std::lock_guard<std::mutex> g(mu_);
    auto it = map_.find(key);
    if (it != map_.end()) return it->second;
    n.id = nodes_.size();
    nodes_.push_back(std::move(n));
    const TermNode* p = &nodes_.back();
    map_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mu_;
  std::deque<TermNode> nodes_;
  std::unordered_map<std::string, const TermNode*> map_;
};

}  // namespace detail

class Term {
 public:
  Term() : p_(nullptr) {}

  static Term var(VarKind k, int index, const std::string& name, const std::string& sort) {
    detail::TermNode n;
    n.is_var = true;
    n.kind = k;
    n.var_index = index;
    n.sym = name;
    n.sort = sort;
    n.repr = name;
    n.ecount = (k == VarKind::Existential) ? 1 : 0;
    n.size = 1;
    std::string key = "v";
    key += (k == VarKind::Existential ? 'e' : 'p');
    key += ':' + name + ':' + sort;
    return Term(detail::TermArena::instance().intern(std::move(n), key));
  }

  static Term app(const Signature& sig, const std::string& fn, const std::vector<Term>& args) {
    const FuncDecl& d = sig.function(fn);
    if (d.args.size() != args.size())
      throw std::invalid_argument("arity mismatch for " + fn);
    for (size_t i = 0; i < args.size(); ++i)
      if (args[i].sort() != d.args[i])
        throw std::invalid_argument("ill-sorted argument " + std::to_string(i) + " of " + fn);
    return app_raw(fn, d.result, args);
  }

  // Unchecked application; internal use (relation encoding, substitution).
  static Term app_raw(const std::string& fn, const std::string& sort,
                      const std::vector<Term>& args) {
    detail::TermNode n;
    n.is_var = false;
    n.sym = fn;
    n.sort = sort;
    n.ecount = 0;
    n.size = 1;
    std::string key = "a:" + fn + ':' + sort + '(';
    std::string repr;
    if (args.empty()) {
      repr = fn;
    } else {
      repr = "(" + fn;
      for (auto& a : args) {
        n.args.push_back(a.p_);
        n.ecount += a.e_count();
        n.size += a.size();
        key += std::to_string(a.id()) + ',';
        repr += ' ' + a.str();
      }
      repr += ')';
    }
    key += ')';
    n.repr = std::move(repr);
    return Term(detail::TermArena::instance().intern(std::move(n), key));
  }

  bool null() const { return p_ == nullptr; }
  bool is_var() const { return p_->is_var; }
  bool is_app() const { return !p_->is_var; }
  bool is_evar() const { return p_->is_var && p_->kind == VarKind::Existential; }
  VarKind kind() const { return p_->kind; }
  int var_index() const { return p_->var_index; }
  const std::string& sym() const { return p_->sym; }
  const std::string& sort() const { return p_->sort; }
  size_t arity() const { return p_->args.size(); }
  Term arg(size_t i) const { return Term(p_->args[i]); }
  int e_count() const { return p_->ecount; }
  int size() const { return p_->size; }
  bool e_free() const { return p_->ecount == 0; }
  const std::string& str() const { return p_->repr; }
  uint64_t id() const { return p_->id; }

  bool operator==(const Term& o) const { return p_ == o.p_; }
  bool operator!=(const Term& o) const { return p_ != o.p_; }
  // Textual total order; used for canonical forms, not for the reduction ordering.
  bool operator<(const Term& o) const { return str() < o.str(); }

  bool contains(const Term& sub) const {
    if (*this == sub) return true;
    if (is_var()) return false;
    for (size_t i = 0; i < arity(); ++i)
      if (arg(i).contains(sub)) return true;
    return false;
  }

  Term subst(const Term& from, const Term& to) const {
    if (*this == from) return to;
    if (is_var() || arity() == 0) return *this;
    std::vector<Term> as;
    as.reserve(arity());
    bool changed = false;
    for (size_t i = 0; i < arity(); ++i) {
      Term a = arg(i).subst(from, to);
      if (a != arg(i)) changed = true;
      as.push_back(a);
    }
    if (!changed) return *this;
    return app_raw(sym(), sort(), as);
  }

  void collect_subterms(std::set<Term>& out) const {
    out.insert(*this);
    for (size_t i = 0; i < arity(); ++i) arg(i).collect_subterms(out);
  }

  void collect_vars(std::set<Term>& out) const {
    if (is_var()) {
      out.insert(*this);
      return;
    }
    for (size_t i = 0; i < arity(); ++i) arg(i).collect_vars(out);
  }

 private:
  explicit Term(const detail::TermNode* p) : p_(p) {}
  const detail::TermNode* p_;
  friend struct TermHash;
};

struct TermHash {
  size_t operator()(const Term& t) const { return std::hash<uint64_t>()(t.id()); }
};

inline bool is_e_free(const Term& t) { return t.e_free(); }

// e-flat term: e-free, or a variable from e, or f(u1..un) with every ui
// e-free or a variable from e.
inline bool is_e_flat_term(const Term& t) {
  if (t.e_free() || t.is_evar()) return true;
  if (t.is_var()) return false;
  for (size_t i = 0; i < t.arity(); ++i) {
    Term a = t.arg(i);
    if (!a.e_free() && !a.is_evar()) return false;
  }
  return true;
}

// "e-free or in e": the admissible right-hand side / disequality operand.
inline bool is_e_atomic(const Term& t) { return t.e_free() || t.is_evar(); }

class Literal {
 public:
  static Literal eq(const Term& a, const Term& b) { return mk_eq(a, b, true); }
  static Literal neq(const Term& a, const Term& b) { return mk_eq(a, b, false); }

  static Literal rel(const Signature& sig, const std::string& name,
                     const std::vector<Term>& args) {
    return mk_rel(sig, name, args, true);
  }
  static Literal nrel(const Signature& sig, const std::string& name,
                      const std::vector<Term>& args) {
    return mk_rel(sig, name, args, false);
  }
  static Literal rel_raw(const std::string& name, const std::vector<Term>& args,
                         bool positive) {
    Literal l;
    l.positive_ = positive;
    l.is_rel_ = true;
    l.rel_ = name;
    l.rargs_ = args;
    return l;
  }

  bool positive() const { return positive_; }
  bool is_rel() const { return is_rel_; }
  bool is_eq() const { return !is_rel_; }
  // Equality operands in textual order (an equality is an unordered pair).
  Term lhs() const { return lhs_; }
  Term rhs() const { return rhs_; }
  const std::string& rel_name() const { return rel_; }
  const std::vector<Term>& rel_args() const { return rargs_; }

  Literal negate() const {
    Literal l = *this;
    l.positive_ = !positive_;
    return l;
  }

  bool e_free() const {
    if (is_rel_) {
      for (auto& a : rargs_)
        if (!a.e_free()) return false;
      return true;
    }
    return lhs_.e_free() && rhs_.e_free();
  }

  Literal subst(const Term& from, const Term& to) const {
    Literal l;
    l.positive_ = positive_;
    l.is_rel_ = is_rel_;
    if (is_rel_) {
      l.rel_ = rel_;
      for (auto& a : rargs_) l.rargs_.push_back(a.subst(from, to));
    } else {
      return mk_eq(lhs_.subst(from, to), rhs_.subst(from, to), positive_);
    }
    return l;
  }

  void collect_terms(std::set<Term>& out) const {
    if (is_rel_) {
      for (auto& a : rargs_) out.insert(a);
    } else {
      out.insert(lhs_);
      out.insert(rhs_);
    }
  }

  std::string str() const {
    std::string s;
    if (is_rel_) {
      if (!positive_) s += "(not ";
      s += "(" + rel_;
      for (auto& a : rargs_) s += ' ' + a.str();
      s += ')';
      if (!positive_) s += ')';
      return s;
    }
    s = "(= " + lhs_.str() + ' ' + rhs_.str() + ')';
    if (!positive_) s = "(not " + s + ')';
    return s;
  }

  bool operator==(const Literal& o) const {
    return positive_ == o.positive_ && is_rel_ == o.is_rel_ && lhs_ == o.lhs_ &&
           rhs_ == o.rhs_ && rel_ == o.rel_ && rargs_ == o.rargs_;
  }
  bool operator!=(const Literal& o) const { return !(*this == o); }
  bool operator<(const Literal& o) const { return str() < o.str(); }

 private:
  static Literal mk_eq(const Term& a, const Term& b, bool pos) {
    if (a.null() || b.null()) throw std::invalid_argument("null term in equality");
    if (a.sort() != b.sort())
      throw std::invalid_argument("ill-sorted equality: " + a.str() + " vs " + b.str());
    Literal l;
    l.positive_ = pos;
    l.is_rel_ = false;
    if (b < a) {
      l.lhs_ = b;
      l.rhs_ = a;
    } else {
      l.lhs_ = a;
      l.rhs_ = b;
    }
    return l;
  }

  static Literal mk_rel(const Signature& sig, const std::string& name,
                        const std::vector<Term>& args, bool pos) {
    const RelDecl& d = sig.relation(name);
    if (d.args.size() != args.size()) throw std::invalid_argument("arity mismatch for " + name);
    for (size_t i = 0; i < args.size(); ++i)
      if (args[i].sort() != d.args[i])
        throw std::invalid_argument("ill-sorted argument " + std::to_string(i) + " of " + name);
    return rel_raw(name, args, pos);
  }

  bool positive_ = true;
  bool is_rel_ = false;
  Term lhs_, rhs_;
  std::string rel_;
  std::vector<Term> rargs_;
};

struct LiteralHash {
  size_t operator()(const Literal& l) const { return std::hash<std::string>()(l.str()); }
};

inline bool is_e_flat(const Literal& l) {
  if (l.is_rel()) {
    for (auto& a : l.rel_args())
      if (!is_e_atomic(a)) return false;
    return true;
  }
  if (!l.positive()) return is_e_atomic(l.lhs()) && is_e_atomic(l.rhs());
  return (is_e_flat_term(l.lhs()) && is_e_atomic(l.rhs())) ||
         (is_e_flat_term(l.rhs()) && is_e_atomic(l.lhs()));
}

// A constraint: canonical set of equalities among e-free terms.
class Constraint {
 public:
  Constraint() = default;

  static Constraint of(std::vector<std::pair<Term, Term>> eqs) {
    Constraint c;
    for (auto& [a, b] : eqs) {
      if (!a.e_free() || !b.e_free())
        throw std::invalid_argument("constraint member is not e-free");
      if (a.sort() != b.sort())
        throw std::invalid_argument("ill-sorted constraint equality");
      if (a == b) continue;
      if (b < a) std::swap(a, b);
      c.eqs_.push_back({a, b});
    }
    std::sort(c.eqs_.begin(), c.eqs_.end(), pair_less);
    c.eqs_.erase(std::unique(c.eqs_.begin(), c.eqs_.end()), c.eqs_.end());
    return c;
  }

  const std::vector<std::pair<Term, Term>>& eqs() const { return eqs_; }
  bool empty() const { return eqs_.empty(); }
  size_t size() const { return eqs_.size(); }

  Constraint union_with(const Constraint& o) const {
    std::vector<std::pair<Term, Term>> all = eqs_;
    all.insert(all.end(), o.eqs_.begin(), o.eqs_.end());
    return of(std::move(all));
  }

  // Syntactic superset test on canonical members.
  bool includes(const Constraint& d) const {
    return std::includes(eqs_.begin(), eqs_.end(), d.eqs_.begin(), d.eqs_.end(), pair_less);
  }

  std::string str() const {
    std::string s = "{";
    bool first = true;
    for (auto& [a, b] : eqs_) {
      if (!first) s += ", ";
      first = false;
      s += a.str() + " = " + b.str();
    }
    return s + "}";
  }

  bool operator==(const Constraint& o) const { return eqs_ == o.eqs_; }
  bool operator!=(const Constraint& o) const { return !(*this == o); }

 private:
  static bool pair_less(const std::pair<Term, Term>& x, const std::pair<Term, Term>& y) {
    if (x.first.str() != y.first.str()) return x.first.str() < y.first.str();
    return x.second.str() < y.second.str();
  }
  std::vector<std::pair<Term, Term>> eqs_;
};

inline Constraint canonical_constraint(const std::vector<std::pair<Term, Term>>& eqs) {
  return Constraint::of(eqs);
}

// L || C, or bottom || C. Meaning: /\C -> L.
struct ConstrainedLiteral {
  std::optional<Literal> lit;  // nullopt means bottom
  Constraint c;

  ConstrainedLiteral() = default;
  ConstrainedLiteral(Literal l, Constraint cc) : lit(std::move(l)), c(std::move(cc)) {}
  static ConstrainedLiteral bottom(Constraint cc) {
    ConstrainedLiteral r;
    r.c = std::move(cc);
    return r;
  }

  bool is_bottom() const { return !lit.has_value(); }

  std::string str() const {
    std::string s = is_bottom() ? "false" : lit->str();
    if (!c.empty()) s += " || " + c.str();
    return s;
  }

  bool operator==(const ConstrainedLiteral& o) const { return lit == o.lit && c == o.c; }
};

class QFFormula {
 public:
  enum class Kind { True, False, Lit, And, Or, Not };

  QFFormula() : n_(std::make_shared<Node>()) { n_->kind = Kind::True; }

  static QFFormula verum() { return mk(Kind::True); }
  static QFFormula falsum() { return mk(Kind::False); }
  static QFFormula lit(Literal l) {
    QFFormula f = mk(Kind::Lit);
    f.n_->lit = std::move(l);
    return f;
  }
  static QFFormula negate(QFFormula f) {
    if (f.kind() == Kind::True) return falsum();
    if (f.kind() == Kind::False) return verum();
    if (f.kind() == Kind::Lit) return lit(f.literal().negate());
    if (f.kind() == Kind::Not) return f.sub(0);
    QFFormula r = mk(Kind::Not);
    r.n_->subs.push_back(f);
    return r;
  }
  static QFFormula conj(std::vector<QFFormula> fs) {
    std::vector<QFFormula> keep;
    for (auto& f : fs) {
      if (f.kind() == Kind::False) return falsum();
      if (f.kind() == Kind::True) continue;
      keep.push_back(f);
    }
    if (keep.empty()) return verum();
    if (keep.size() == 1) return keep[0];
    QFFormula r = mk(Kind::And);
    r.n_->subs = std::move(keep);
    return r;
  }
  static QFFormula disj(std::vector<QFFormula> fs) {
    std::vector<QFFormula> keep;
    for (auto& f : fs) {
      if (f.kind() == Kind::True) return verum();
      if (f.kind() == Kind::False) continue;
      keep.push_back(f);
    }
    if (keep.empty()) return falsum();
    if (keep.size() == 1) return keep[0];
    QFFormula r = mk(Kind::Or);
    r.n_->subs = std::move(keep);
    return r;
  }

  Kind kind() const { return n_->kind; }
  const Literal& literal() const { return n_->lit; }
  size_t n_subs() const { return n_->subs.size(); }
  QFFormula sub(size_t i) const { return n_->subs[i]; }

  QFFormula subst(const Term& from, const Term& to) const {
    switch (kind()) {
      case Kind::True:
      case Kind::False:
        return *this;
      case Kind::Lit:
        return lit(literal().subst(from, to));
      default: {
        std::vector<QFFormula> subs;
        for (size_t i = 0; i < n_subs(); ++i) subs.push_back(sub(i).subst(from, to));
        if (kind() == Kind::And) return conj(std::move(subs));
        if (kind() == Kind::Or) return disj(std::move(subs));
        return negate(subs[0]);
      }
    }
  }

  void collect_literals(std::vector<Literal>& out) const {
    if (kind() == Kind::Lit) out.push_back(literal());
    for (size_t i = 0; i < n_subs(); ++i) sub(i).collect_literals(out);
  }

  std::string str() const {
    switch (kind()) {
      case Kind::True:
        return "true";
      case Kind::False:
        return "false";
      case Kind::Lit:
        return literal().str();
      case Kind::Not:
        return "(not " + sub(0).str() + ")";
      case Kind::And:
      case Kind::Or: {
        std::string s = kind() == Kind::And ? "(and" : "(or";
        for (size_t i = 0; i < n_subs(); ++i) s += ' ' + sub(i).str();
        return s + ")";
      }
    }
    return "?";
  }

 private:
  struct Node {
    Kind kind;
    Literal lit;
    std::vector<QFFormula> subs;
  };
  static QFFormula mk(Kind k) {
    QFFormula f;
    f.n_ = std::make_shared<Node>();
    f.n_->kind = k;
    return f;
  }
  std::shared_ptr<Node> n_;
};

}  // namespace covergen
