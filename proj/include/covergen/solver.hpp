#pragma once

// Ground decision procedures: congruence closure for EUF literal sets,
// DNF-level satisfiability for quantifier-free formulae, Herbrand
// instantiation of one-variable universal axioms over acyclic signatures.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "core.hpp"

namespace covergen {

struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Union-find with signature-table congruence propagation.
class CC {
 public:
  int add(const Term& t) {
    auto it = idx_.find(t);
    if (it != idx_.end()) return it->second;
    std::vector<int> args;
    for (size_t i = 0; i < t.arity(); ++i) args.push_back(add(t.arg(i)));
    int n = static_cast<int>(terms_.size());
    idx_.emplace(t, n);
    terms_.push_back(t);
    parent_.push_back(n);
    rank_.push_back(0);
    members_.push_back({n});
    args_.push_back(args);
    use_.push_back({});
    for (int a : args) use_[find(a)].push_back(n);
    if (t.is_app()) {
      auto key = sig_key(n);
      auto [sit, fresh] = sigtab_.emplace(key, n);
      if (!fresh) pending_.push_back({n, sit->second});
      flush();
    }
    return n;
  }

  void merge(const Term& a, const Term& b) {
    pending_.push_back({add(a), add(b)});
    flush();
  }

  bool same(const Term& a, const Term& b) {
    int x = add(a);
    int y = add(b);  // may merge classes, so add both before taking reps
    return find(x) == find(y);
  }
  int find_term(const Term& t) { return find(add(t)); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  size_t n_nodes() const { return terms_.size(); }
  const Term& term(int i) const { return terms_[i]; }
  const std::vector<int>& class_members(int rep) { return members_[find(rep)]; }
  bool has(const Term& t) const { return idx_.count(t) != 0; }

 private:
  std::string sig_key(int n) {
    std::string k = terms_[n].sym() + "/" + terms_[n].sort() + "(";
    for (int a : args_[n]) k += std::to_string(find(a)) + ",";
    return k + ")";
  }

  void flush() {
    while (!pending_.empty()) {
      auto [x, y] = pending_.back();
      pending_.pop_back();
      int rx = find(x), ry = find(y);
      if (rx == ry) continue;
      if (rank_[rx] < rank_[ry]) std::swap(rx, ry);
      if (rank_[rx] == rank_[ry]) ++rank_[rx];
      parent_[ry] = rx;
      members_[rx].insert(members_[rx].end(), members_[ry].begin(), members_[ry].end());
      std::vector<int> moved = std::move(use_[ry]);
      use_[ry].clear();
      for (int u : moved) {
        auto key = sig_key(u);
        auto [it, fresh] = sigtab_.emplace(key, u);
        if (!fresh && find(it->second) != find(u)) pending_.push_back({u, it->second});
        use_[rx].push_back(u);
      }
    }
  }

  std::unordered_map<Term, int, TermHash> idx_;
  std::vector<Term> terms_;
  std::vector<int> parent_, rank_;
  std::vector<std::vector<int>> members_;
  std::vector<std::vector<int>> args_;
  std::vector<std::vector<int>> use_;
  std::unordered_map<std::string, int> sigtab_;
  std::vector<std::pair<int, int>> pending_;
};

namespace detail {

// Relation atoms are reduced to equalities with a per-relation tag constant.
inline Term rel_term(const Literal& l) {
  return Term::app_raw("@" + l.rel_name(), "@bool:" + l.rel_name(), l.rel_args());
}
inline Term rel_true(const std::string& rel) {
  return Term::app_raw("@true:" + rel, "@bool:" + rel, {});
}

}  // namespace detail

enum class SatResult { Sat, Unsat };

inline SatResult cc_sat(const std::vector<Literal>& lits) {
  CC cc;
  std::vector<std::pair<Term, Term>> diseqs;
  for (auto& l : lits) {
    Term a, b;
    if (l.is_rel()) {
      a = detail::rel_term(l);
      b = detail::rel_true(l.rel_name());
    } else {
      a = l.lhs();
      b = l.rhs();
    }
    if (l.positive())
      cc.merge(a, b);
    else
      diseqs.push_back({a, b});
  }
  for (auto& [a, b] : diseqs)
    if (cc.same(a, b)) return SatResult::Unsat;
  return SatResult::Sat;
}

// One-variable universal axiom: forall (var : sort). body.
struct Axiom {
  Term var;  // a Parameter-kind placeholder
  QFFormula body;
};

struct Theory {
  bool undef = false;          // per-function undef propagation axioms
  std::vector<Axiom> axioms;   // other one-variable universal axioms
  bool empty() const { return !undef && axioms.empty(); }
};

inline Term undef_const(const std::string& sort) {
  return Term::app_raw("undef." + sort, sort, {});
}

// Expand the undef theory into explicit one-variable axioms for sig.
inline std::vector<Axiom> theory_axioms(const Signature& sig, const Theory& th) {
  std::vector<Axiom> out = th.axioms;
  if (th.undef) {
    for (auto& f : sig.functions()) {
      if (f.args.size() != 1) continue;
      Term x = Term::var(VarKind::Parameter, 0, "@x", f.args[0]);
      Term fx = Term::app_raw(f.name, f.result, {x});
      Term ua = undef_const(f.args[0]);
      Term ur = undef_const(f.result);
      // x = undef <-> f(x) = undef, phrased as a two-cube split so each
      // instance contributes one binary case split rather than a CNF product
      QFFormula both = QFFormula::disj(
          {QFFormula::conj({QFFormula::lit(Literal::eq(x, ua)),
                            QFFormula::lit(Literal::eq(fx, ur))}),
           QFFormula::conj({QFFormula::lit(Literal::neq(x, ua)),
                            QFFormula::lit(Literal::neq(fx, ur))})});
      out.push_back({x, both});
    }
  }
  return out;
}

inline bool is_acyclic(const Signature& sig) {
  std::map<std::string, std::vector<std::string>> adj;
  for (auto& f : sig.functions())
    for (auto& a : f.args) adj[a].push_back(f.result);
  std::map<std::string, int> state;  // 0 new, 1 open, 2 done
  std::function<bool(const std::string&)> dfs = [&](const std::string& s) {
    state[s] = 1;
    for (auto& n : adj[s]) {
      if (state[n] == 1) return false;
      if (state[n] == 0 && !dfs(n)) return false;
    }
    state[s] = 2;
    return true;
  };
  for (auto& s : sig.sorts())
    if (state[s] == 0 && !dfs(s)) return false;
  return true;
}

// All ground terms generable from `base` (plus signature constants), closed
// under function application. Finite only for acyclic signatures.
inline std::vector<Term> generable_terms(const Signature& sig, std::vector<Term> base,
                                         size_t cap = 5000) {
  std::set<Term> seen;
  std::deque<Term> work;
  auto push = [&](const Term& t) {
    if (seen.insert(t).second) work.push_back(t);
  };
  for (auto& f : sig.functions())
    if (f.args.empty()) push(Term::app_raw(f.name, f.result, {}));
  for (auto& t : base) {
    std::set<Term> subs;
    t.collect_subterms(subs);
    for (auto& s : subs) push(s);
  }
  std::map<std::string, std::vector<Term>> by_sort;
  for (auto& t : seen) by_sort[t.sort()].push_back(t);
  while (!work.empty()) {
    if (seen.size() > cap) throw BudgetError("ground term closure exceeded cap");
    Term t = work.front();
    work.pop_front();
    for (auto& f : sig.functions()) {
      if (f.args.empty()) continue;
      // enumerate argument tuples that use t at least once
      std::vector<std::vector<Term>> pools;
      bool ok = true;
      for (auto& s : f.args) {
        if (by_sort.count(s) == 0) {
          ok = false;
          break;
        }
        pools.push_back(by_sort[s]);
      }
      if (!ok) continue;
      std::vector<size_t> ix(pools.size(), 0);
      while (true) {
        std::vector<Term> args;
        bool uses_t = false;
        for (size_t i = 0; i < pools.size(); ++i) {
          args.push_back(pools[i][ix[i]]);
          if (pools[i][ix[i]] == t) uses_t = true;
        }
        if (uses_t) {
          Term nt = Term::app_raw(f.name, f.result, args);
          if (seen.insert(nt).second) {
            by_sort[nt.sort()].push_back(nt);
            work.push_back(nt);
          }
        }
        size_t k = 0;
        for (; k < ix.size(); ++k) {
          if (++ix[k] < pools[k].size()) break;
          ix[k] = 0;
        }
        if (k == ix.size()) break;
      }
    }
  }
  std::vector<Term> out(seen.begin(), seen.end());
  return out;
}

inline std::vector<QFFormula> herbrand_instances(const Signature& sig,
                                                 const std::vector<Axiom>& axioms,
                                                 const std::vector<Term>& ground) {
  if (axioms.empty()) return {};
  if (!is_acyclic(sig))
    throw std::invalid_argument("axioms over a cyclic signature: term universe is infinite");
  std::vector<Term> terms = generable_terms(sig, ground);
  std::vector<QFFormula> out;
  for (auto& ax : axioms)
    for (auto& t : terms)
      if (t.sort() == ax.var.sort() && t.e_free()) out.push_back(ax.body.subst(ax.var, t));
  return out;
}

namespace detail {

inline void dnf_rec(const QFFormula& f, bool neg, std::vector<std::vector<Literal>>& acc,
                    size_t budget) {
  using K = QFFormula::Kind;
  K k = f.kind();
  if (k == K::Not) {
    dnf_rec(f.sub(0), !neg, acc, budget);
    return;
  }
  if (k == K::True || k == K::False) {
    bool istrue = (k == K::True) != neg;
    if (!istrue) acc.clear();
    return;
  }
  if (k == K::Lit) {
    Literal l = neg ? f.literal().negate() : f.literal();
    for (auto& cube : acc) cube.push_back(l);
    return;
  }
  bool conjunctive = (k == K::And) != neg;
  if (conjunctive) {
    for (size_t i = 0; i < f.n_subs(); ++i) dnf_rec(f.sub(i), neg, acc, budget);
    return;
  }
  std::vector<std::vector<Literal>> result;
  for (size_t i = 0; i < f.n_subs(); ++i) {
    std::vector<std::vector<Literal>> branch = acc;
    dnf_rec(f.sub(i), neg, branch, budget);
    result.insert(result.end(), branch.begin(), branch.end());
    if (result.size() > budget) throw BudgetError("DNF expansion exceeded budget");
  }
  acc = std::move(result);
}

// Branch over theory-axiom instances one at a time, pruning each partial
// assignment by congruence closure. Avoids materializing the DNF product of
// all instances, which grows exponentially with the instantiation count.
inline bool sat_with_instances(std::vector<Literal>& lits,
                               const std::vector<std::vector<std::vector<Literal>>>& insts,
                               size_t i, size_t& nodes, size_t budget) {
  if (++nodes > budget) throw BudgetError("theory case split exceeded budget");
  if (cc_sat(lits) == SatResult::Unsat) return false;
  if (i == insts.size()) return true;
  for (auto& branch : insts[i]) {
    size_t n = lits.size();
    lits.insert(lits.end(), branch.begin(), branch.end());
    bool ok = sat_with_instances(lits, insts, i + 1, nodes, budget);
    lits.resize(n);
    if (ok) return true;
  }
  return false;
}

}  // namespace detail

inline std::vector<std::vector<Literal>> to_dnf(const QFFormula& f, size_t budget = 100000) {
  std::vector<std::vector<Literal>> acc{{}};
  detail::dnf_rec(f, false, acc, budget);
  return acc;
}

inline SatResult qf_sat(const Signature& sig, const QFFormula& phi, const Theory& th,
                        size_t budget = 100000) {
  std::vector<QFFormula> instances;
  if (!th.empty()) {
    std::vector<Literal> lits;
    phi.collect_literals(lits);
    std::set<Term> ts;
    for (auto& l : lits) {
      std::set<Term> tops;
      l.collect_terms(tops);
      for (auto& t : tops) t.collect_subterms(ts);
    }
    if (th.undef) {
      // The undef axioms are instantiated at every subterm of the query
      // (existential constants included); no term closure, so cyclic
      // signatures are fine and Unsat verdicts stay sound.
      for (auto& s : sig.sorts()) ts.insert(undef_const(s));
      Theory uth;
      uth.undef = true;
      for (auto& ax : theory_axioms(sig, uth))
        for (auto& t : ts)
          if (t.sort() == ax.var.sort()) instances.push_back(ax.body.subst(ax.var, t));
    }
    if (!th.axioms.empty()) {
      std::vector<Term> ground(ts.begin(), ts.end());
      for (auto& inst : herbrand_instances(sig, th.axioms, ground)) instances.push_back(inst);
    }
  }
  // Split the query into top-level conjuncts and keep each one a separate
  // case split (DPLL-style, pruned by congruence closure): expanding the
  // whole conjunction into one DNF multiplies cube counts per conjunct.
  std::vector<Literal> lits0;
  std::vector<std::vector<std::vector<Literal>>> insts;
  std::function<bool(const QFFormula&)> split = [&](const QFFormula& f) {
    using K = QFFormula::Kind;
    if (f.kind() == K::True) return true;
    if (f.kind() == K::False) return false;
    if (f.kind() == K::Lit) {
      lits0.push_back(f.literal());
      return true;
    }
    if (f.kind() == K::And) {
      for (size_t i = 0; i < f.n_subs(); ++i)
        if (!split(f.sub(i))) return false;
      return true;
    }
    auto cubes = to_dnf(f, budget);
    if (cubes.empty()) return false;
    insts.push_back(std::move(cubes));
    return true;
  };
  if (!split(phi)) return SatResult::Unsat;
  for (auto& f : instances) {
    auto cubes = to_dnf(f, budget);
    if (cubes.empty()) return SatResult::Unsat;
    insts.push_back(std::move(cubes));
  }
  size_t nodes = 0;
  return detail::sat_with_instances(lits0, insts, 0, nodes, budget) ? SatResult::Sat
                                                                    : SatResult::Unsat;
}

inline bool entails(const Signature& sig, const QFFormula& phi, const QFFormula& psi,
                    const Theory& th = {}, size_t budget = 100000) {
  QFFormula q = QFFormula::conj({phi, QFFormula::negate(psi)});
  return qf_sat(sig, q, th, budget) == SatResult::Unsat;
}

inline bool equivalent(const Signature& sig, const QFFormula& a, const QFFormula& b,
                       const Theory& th = {}, size_t budget = 100000) {
  return entails(sig, a, b, th, budget) && entails(sig, b, a, th, budget);
}

}  // namespace covergen
