#pragma once

// Flattening: rewrite a primitive conjunction into e-flat literals by naming
// offending subterms with fresh existential variables (innermost-leftmost,
// memoized).

#include <map>
#include <set>
#include <string>
#include <vector>

#include "core.hpp"

namespace covergen {

struct FlattenResult {
  std::vector<Literal> lits;
  std::vector<Term> evars;  // originals followed by the fresh ones
};

namespace detail {

class Flattener {
 public:
  Flattener(std::vector<Term> evars, const std::vector<Literal>& body) : evars_(std::move(evars)) {
    for (auto& e : evars_) used_.insert(e.sym());
    std::set<Term> vars;
    for (auto& l : body) {
      std::set<Term> ts;
      l.collect_terms(ts);
      for (auto& t : ts) t.collect_vars(vars);
    }
    for (auto& v : vars) used_.insert(v.sym());
  }

  FlattenResult run(const std::vector<Literal>& body) {
    FlattenResult r;
    for (auto& l : body) {
      Literal out = flatten_literal(l);
      r.lits.insert(r.lits.end(), defs_.begin(), defs_.end());
      defs_.clear();
      r.lits.push_back(out);
    }
    r.evars = evars_;
    return r;
  }

 private:
  Literal flatten_literal(const Literal& l) {
    if (l.is_rel()) {
      std::vector<Term> as;
      for (auto& a : l.rel_args()) as.push_back(atomize(a));
      return Literal::rel_raw(l.rel_name(), as, l.positive());
    }
    Term a = l.lhs(), b = l.rhs();
    if (!l.positive()) {
      Term fa = atomize(a);  // left operand first: naming order is part of the contract
      Term fb = atomize(b);
      return Literal::neq(fa, fb);
    }
    if (is_e_atomic(b)) return Literal::eq(flat_term(a), b);
    if (is_e_atomic(a)) return Literal::eq(flat_term(b), a);
    return Literal::eq(flat_term(a), atomize(b));
  }

  // Make t an e-flat term (arguments atomized).
  Term flat_term(const Term& t) {
    if (t.e_free() || t.is_var()) return t;
    std::vector<Term> as;
    for (size_t i = 0; i < t.arity(); ++i) as.push_back(atomize(t.arg(i)));
    return Term::app_raw(t.sym(), t.sort(), as);
  }

  // Make t e-free or an e-variable, emitting definitions as needed.
  Term atomize(const Term& t) {
    if (is_e_atomic(t)) return t;
    Term ft = flat_term(t);
    auto it = memo_.find(ft);
    if (it != memo_.end()) return it->second;
    Term e = fresh(t.sort());
    defs_.push_back(Literal::eq(ft, e));
    memo_.emplace(ft, e);
    return e;
  }

  Term fresh(const std::string& sort) {
    std::string name;
    do {
      name = "e" + std::to_string(++counter_);
    } while (used_.count(name));
    used_.insert(name);
    Term e = Term::var(VarKind::Existential, static_cast<int>(evars_.size()) + 1, name, sort);
    evars_.push_back(e);
    return e;
  }

  std::vector<Term> evars_;
  std::set<std::string> used_;
  std::map<Term, Term> memo_;
  std::vector<Literal> defs_;
  int counter_ = 0;
};

}  // namespace detail

inline FlattenResult flatten(const std::vector<Literal>& body, const std::vector<Term>& evars) {
  detail::Flattener f(evars, body);
  return f.run(body);
}

}  // namespace covergen
