#pragma once

// Backward reachability for quantifier-free transition systems: iterate
// pre-images of the unsafe states, eliminating the primed variables of each
// step with a cover computation, until the initial states are hit or a
// fixpoint is reached.

#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "calculus.hpp"
#include "core.hpp"
#include "dbcover.hpp"
#include "flatten.hpp"
#include "oracle.hpp"
#include "ordering.hpp"
#include "solver.hpp"

namespace covergen {

// State variables are Parameter-kind terms; the post-state copy of x is the
// variable written x' in trans.
inline Term primed(const Term& v) {
  return Term::var(VarKind::Parameter, 0, v.sym() + "'", v.sort());
}

struct TransitionSystem {
  Signature sig;
  Theory theory;
  std::vector<Term> vars;  // state variables x
  QFFormula init = QFFormula::falsum();
  QFFormula trans = QFFormula::falsum();  // over x and x'
  QFFormula unsafe = QFFormula::falsum();
};

// One disjunct of a pre-image: a cube whose primed variables have been
// renamed to existentials, ready for cover computation.
struct Primitive {
  std::vector<Literal> lits;
  std::vector<Term> evars;
};

// Pre(tau, phi) = exists x'. tau(x,x') /\ phi(x'), split into primitive cubes.
inline std::vector<Primitive> pre_image(const TransitionSystem& sys, const QFFormula& phi,
                                        size_t dnf_budget = 100000) {
  QFFormula shifted = phi;
  std::vector<std::pair<Term, Term>> rename;  // primed param -> existential
  for (size_t i = 0; i < sys.vars.size(); ++i) {
    const Term& v = sys.vars[i];
    shifted = shifted.subst(v, primed(v));
    rename.push_back({primed(v), Term::var(VarKind::Existential, static_cast<int>(i) + 1,
                                           v.sym() + "'", v.sort())});
  }
  std::vector<Primitive> out;
  for (auto& cube : to_dnf(QFFormula::conj({sys.trans, shifted}), dnf_budget)) {
    Primitive p;
    std::set<Term> used;
    for (auto& l : cube) {
      Literal nl = l;
      for (auto& [from, to] : rename) nl = nl.subst(from, to);
      std::set<Term> ts;
      nl.collect_terms(ts);
      for (auto& t : ts) t.collect_vars(used);
      p.lits.push_back(nl);
    }
    if (cc_sat(p.lits) == SatResult::Unsat) continue;
    for (auto& [from, to] : rename)
      if (used.count(to)) p.evars.push_back(to);
    out.push_back(std::move(p));
  }
  return out;
}

// Quantifier elimination by cover computation. Dispatch: DB signatures with
// no theory go through the quadratic engine, the undef theory through the
// extended calculus, the empty theory through the plain calculus; anything
// else is out of scope and reported as such.
inline QFFormula qe_cover(const TransitionSystem& sys, const Primitive& p) {
  std::vector<QFFormula> body;
  for (auto& l : p.lits) body.push_back(QFFormula::lit(l));
  if (p.evars.empty()) return QFFormula::conj(std::move(body));

  if (!sys.theory.axioms.empty())
    throw std::invalid_argument(
        "qe_cover: general universal axioms are not supported; only the empty "
        "theory and the undef axioms have a cover procedure here");
  FlattenResult fr = flatten(p.lits, p.evars);
  Ordering ord(Precedence::defaults(sys.sig, fr.evars, sys.vars));

  QFFormula psi = QFFormula::falsum();
  if (sys.theory.undef) {
    for (auto& f : sys.sig.functions())
      if (f.args.size() != 1)
        throw std::invalid_argument(
            "qe_cover: the undef theory is only supported over unary function "
            "symbols (got " + f.name + ")");
    SaturateOpts o;
    o.undef = true;
    psi = saturate(sys.sig, fr.lits, ord, o).cover_formula(true);
  } else if (sys.sig.is_db()) {
    psi = db_cover(sys.sig, fr.lits, fr.evars, ord).unravel();
  } else {
    psi = saturate(sys.sig, fr.lits, ord).cover_formula(true);
  }

  // covers are quantifier-free over the state variables; anything else left
  // over means the eliminator failed its contract
  std::set<Term> vs;
  std::vector<Literal> ls;
  psi.collect_literals(ls);
  for (auto& l : ls) {
    std::set<Term> ts;
    l.collect_terms(ts);
    for (auto& t : ts) t.collect_vars(vs);
  }
  for (auto& v : vs)
    if (v.is_evar()) throw std::logic_error("qe_cover left an existential in: " + psi.str());
  return psi;
}

struct ReachResult {
  enum class Verdict { Safe, Unsafe, BudgetExceeded };
  Verdict verdict = Verdict::BudgetExceeded;
  int steps = 0;                           // Unsafe: pre-image steps to the violation
  QFFormula invariant = QFFormula::falsum();  // Safe: the backward-reachable set B
  std::vector<size_t> frontier_sizes;      // per-iteration trace
};

inline int default_reach_budget() {
  if (const char* s = std::getenv("COVERGEN_BUDGET")) {
    int v = std::atoi(s);
    if (v > 0) return v;
  }
  return 64;
}

// Backward reachability. The frontier is a list of quantifier-free
// disjuncts; a disjunct already entailed by the accumulated set B is
// dropped, and the search is at a fixpoint when nothing survives.
inline ReachResult breach(const TransitionSystem& sys, int budget = default_reach_budget()) {
  ReachResult r;
  std::vector<QFFormula> B;
  std::vector<QFFormula> frontier = {sys.unsafe};
  for (int k = 0;; ++k) {
    QFFormula Bf = B.empty() ? QFFormula::falsum() : QFFormula::disj(B);
    std::vector<QFFormula> fresh;
    for (auto& d : frontier) {
      if (qf_sat(sys.sig, d, sys.theory) == SatResult::Unsat) continue;
      if (!B.empty() && entails(sys.sig, d, Bf, sys.theory)) continue;
      fresh.push_back(d);
    }
    r.frontier_sizes.push_back(fresh.size());
    if (fresh.empty()) {
      r.verdict = ReachResult::Verdict::Safe;
      r.invariant = Bf;
      return r;
    }
    for (auto& d : fresh) {
      if (qf_sat(sys.sig, QFFormula::conj({sys.init, d}), sys.theory) == SatResult::Sat) {
        r.verdict = ReachResult::Verdict::Unsafe;
        r.steps = k;
        return r;
      }
    }
    if (k >= budget) {
      r.verdict = ReachResult::Verdict::BudgetExceeded;
      return r;
    }
    for (auto& d : fresh) B.push_back(d);
    std::vector<QFFormula> next;
    for (auto& d : fresh)
      for (auto& p : pre_image(sys, d)) next.push_back(qe_cover(sys, p));
    frontier = std::move(next);
  }
}

// k-step unrolling init(x^0) /\ trans(x^0,x^1) /\ ... /\ unsafe(x^k); step
// copies of x are written x@i.
inline QFFormula unrolling(const TransitionSystem& sys, int k) {
  auto at = [&](const Term& v, int i) {
    return Term::var(VarKind::Parameter, 0, v.sym() + "@" + std::to_string(i), v.sort());
  };
  std::vector<QFFormula> parts;
  QFFormula i0 = sys.init;
  for (auto& v : sys.vars) i0 = i0.subst(v, at(v, 0));
  parts.push_back(i0);
  for (int i = 0; i < k; ++i) {
    QFFormula t = sys.trans;
    for (auto& v : sys.vars) {
      t = t.subst(primed(v), at(v, i + 1));
      t = t.subst(v, at(v, i));
    }
    parts.push_back(t);
  }
  QFFormula u = sys.unsafe;
  for (auto& v : sys.vars) u = u.subst(v, at(v, k));
  parts.push_back(u);
  return QFFormula::conj(std::move(parts));
}

// Every Unsafe verdict must come with a satisfiable unrolling.
inline bool certify_unsafe(const TransitionSystem& sys, int k) {
  return qf_sat(sys.sig, unrolling(sys, k), sys.theory) == SatResult::Sat;
}

// Every Safe verdict's B must contain the unsafe states, avoid the initial
// ones, and be closed under pre-image.
inline bool certify_safe(const TransitionSystem& sys, const QFFormula& B) {
  if (qf_sat(sys.sig, QFFormula::conj({sys.init, B}), sys.theory) == SatResult::Sat)
    return false;
  if (!entails(sys.sig, sys.unsafe, B, sys.theory)) return false;
  for (auto& p : pre_image(sys, B))
    if (!entails(sys.sig, qe_cover(sys, p), B, sys.theory)) return false;
  return true;
}

namespace detail {

// Finite transition graph of one structure: nodes are assignments of the
// state variables, edges are pairs satisfying trans. True iff an unsafe
// node is reachable from an initial one.
inline bool model_reaches_unsafe(Model M, const TransitionSystem& sys) {
  size_t nv = sys.vars.size();
  std::vector<int> dim(nv);
  size_t total = 1;
  for (size_t i = 0; i < nv; ++i) {
    dim[i] = M.size.at(sys.vars[i].sort());
    total *= static_cast<size_t>(dim[i]);
  }
  auto decode = [&](size_t idx, std::vector<int>& st) {
    for (size_t i = 0; i < nv; ++i) {
      st[i] = static_cast<int>(idx % dim[i]);
      idx /= dim[i];
    }
  };
  auto set_state = [&](size_t idx, bool primed_copy) {
    std::vector<int> st(nv);
    decode(idx, st);
    for (size_t i = 0; i < nv; ++i)
      M.assign[primed_copy ? sys.vars[i].sym() + "'" : sys.vars[i].sym()] = st[i];
  };
  std::vector<char> seen(total, 0);
  std::deque<size_t> q;
  for (size_t idx = 0; idx < total; ++idx) {
    set_state(idx, false);
    if (M.holds(sys.init)) {
      seen[idx] = 1;
      q.push_back(idx);
    }
  }
  while (!q.empty()) {
    size_t u = q.front();
    q.pop_front();
    set_state(u, false);
    if (M.holds(sys.unsafe)) return true;
    for (size_t v = 0; v < total; ++v) {
      if (seen[v]) continue;
      set_state(v, true);
      if (M.holds(sys.trans)) {
        seen[v] = 1;
        q.push_back(v);
      }
    }
  }
  return false;
}

}  // namespace detail

// Ground truth on tiny universes: enumerate every structure of the theory
// with carriers of size <= max_dom and walk its transition graph. True iff
// some structure can reach an unsafe state from an initial one.
inline bool enumerate_unsafe(const TransitionSystem& sys, int max_dom = 3) {
  const auto& sorts = sys.sig.sorts();
  std::vector<int> dims(sorts.size(), 1);
  while (true) {
    std::map<std::string, int> sizes;
    for (size_t i = 0; i < sorts.size(); ++i) sizes[sorts[i]] = dims[i];
    ModelSpace sp = model_space(sys.sig, sizes, {}, sys.theory);
    bool found = false;
    sp.for_each([&](const Model& M) {
      if (!M.satisfies(sys.theory)) return true;
      if (detail::model_reaches_unsafe(M, sys)) {
        found = true;
        return false;
      }
      return true;
    });
    if (found) return true;
    size_t k = 0;
    for (; k < dims.size(); ++k) {
      if (++dims[k] <= max_dom) break;
      dims[k] = 1;
    }
    if (k == dims.size()) return false;
  }
}

}  // namespace covergen
