#pragma once

// Cover computation specialized to DB signatures (unary functions, native
// relations): congruence closure over the positive equalities, marking of
// definable existentials, Resolution between complementary relation atoms,
// and dag-format output with explicit acyclic definitions.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core.hpp"
#include "ordering.hpp"
#include "solver.hpp"

namespace covergen {

// Closure of a literal set under the two restricted superposition bullets:
// sibling images f(e)=t, f(e)=v add t=v; a definition e_i = u with e_i > u
// rewrites e_i inside other literals. Reference fixpoint, used by tests; the
// cover algorithm itself reads the same facts off a congruence closure.
inline std::set<Literal> rs_close(const Signature& sig, const std::set<Literal>& in,
                                  const Ordering& ord) {
  if (!sig.is_db()) throw std::invalid_argument("rs_close requires a DB signature");
  std::set<Literal> s = in;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Literal> cur(s.begin(), s.end());
    for (auto& a : cur) {
      if (!a.is_eq() || !a.positive()) continue;
      // sibling images
      for (auto& b : cur) {
        if (&a == &b || !b.is_eq() || !b.positive()) continue;
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            Term fa = i == 0 ? a.lhs() : a.rhs();
            Term fb = j == 0 ? b.lhs() : b.rhs();
            Term ta = i == 0 ? a.rhs() : a.lhs();
            Term tb = j == 0 ? b.rhs() : b.lhs();
            if (fa == fb && fa.is_app() && fa.arity() == 1 && ta != tb)
              changed |= s.insert(Literal::eq(ta, tb)).second;
          }
      }
      // rewriting by a variable definition
      Term l, r;
      if (a.lhs().is_evar() && ord.greater(a.lhs(), a.rhs())) {
        l = a.lhs();
        r = a.rhs();
      } else if (a.rhs().is_evar() && ord.greater(a.rhs(), a.lhs())) {
        l = a.rhs();
        r = a.lhs();
      } else {
        continue;
      }
      for (auto& b : cur) {
        if (a == b) continue;
        Literal nb = b.subst(l, r);
        if (nb != b && !(nb.is_eq() && nb.positive() && nb.lhs() == nb.rhs()))
          changed |= s.insert(nb).second;
      }
    }
  }
  return s;
}

struct DagCover {
  bool bottom = false;
  std::vector<std::pair<Term, Term>> defs;  // (e_i, t_i), t_i over y and earlier e's
  std::vector<QFFormula> psi;               // clauses over y and defined e's

  QFFormula unravel() const {
    if (bottom) return QFFormula::falsum();
    QFFormula f = QFFormula::conj(psi);
    for (auto it = defs.rbegin(); it != defs.rend(); ++it) f = f.subst(it->first, it->second);
    return f;
  }

  std::string str() const {
    if (bottom) return "false";
    std::string s;
    for (auto& [e, t] : defs) s += "(def " + e.str() + " " + t.str() + ")\n";
    for (auto& c : psi) s += c.str() + "\n";
    if (s.empty()) s = "true\n";
    return s;
  }
};

namespace detail {

struct DbState {
  CC cc;
  std::set<Term> marked;
  const Ordering* ord;

  bool admissible(const Term& t) const {
    std::set<Term> vs;
    t.collect_vars(vs);
    for (auto& v : vs)
      if (v.is_evar() && !marked.count(v)) return false;
    return true;
  }

  // ordering-least admissible member of t's class, if any
  std::optional<Term> least_adm(CC& c, const Term& t) {
    std::optional<Term> best;
    for (int m : c.class_members(c.find_term(t))) {
      const Term& cand = c.term(m);
      if (!admissible(cand)) continue;
      if (!best || ord->compare(cand, *best) == Cmp::Less) best = cand;
    }
    return best;
  }
};

}  // namespace detail

inline DagCover db_cover(const Signature& sig, const std::vector<Literal>& body,
                         const std::vector<Term>& evars, const Ordering& ord) {
  if (!sig.is_db()) throw std::invalid_argument("db_cover requires a DB signature");
  for (auto& l : body)
    if (!is_e_flat(l)) throw std::invalid_argument("db_cover input is not e-flat: " + l.str());

  detail::DbState st;
  st.ord = &ord;
  std::vector<Literal> diseqs, rels;
  for (auto& l : body) {
    if (l.is_rel()) {
      for (auto& a : l.rel_args()) st.cc.add(a);
      rels.push_back(l);
    } else if (l.positive()) {
      st.cc.merge(l.lhs(), l.rhs());
    } else {
      st.cc.add(l.lhs());
      st.cc.add(l.rhs());
      diseqs.push_back(l);
    }
  }

  DagCover out;

  // marking fixpoint: e gets marked (and defined) once its class holds a
  // term built only from parameters and already-marked existentials
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& e : evars) {
      if (st.marked.count(e) || !st.cc.has(e)) continue;
      std::optional<Term> wit;
      for (int m : st.cc.class_members(st.cc.find_term(e))) {
        const Term& cand = st.cc.term(m);
        if (cand == e || !st.admissible(cand)) continue;
        if (!wit || ord.compare(cand, *wit) == Cmp::Less) wit = cand;
      }
      if (wit) {
        st.marked.insert(e);
        out.defs.push_back({e, *wit});
        changed = true;
      }
    }
  }

  // inconsistency: a disequality with congruent sides, or complementary
  // relation atoms with pairwise congruent arguments
  for (auto& d : diseqs)
    if (st.cc.same(d.lhs(), d.rhs())) {
      out.bottom = true;
      return out;
    }
  for (auto& p : rels) {
    if (!p.positive()) continue;
    for (auto& n : rels) {
      if (n.positive() || n.rel_name() != p.rel_name()) continue;
      bool all = true;
      for (size_t i = 0; i < p.rel_args().size() && all; ++i)
        all = st.cc.same(p.rel_args()[i], n.rel_args()[i]);
      if (all) {
        out.bottom = true;
        return out;
      }
    }
  }

  std::set<std::string> seen;
  auto emit = [&](const QFFormula& f) {
    if (seen.insert(f.str()).second) out.psi.push_back(f);
  };

  // equalities: every admissible class member equated to the least one
  std::set<int> reps;
  for (size_t i = 0; i < st.cc.n_nodes(); ++i) reps.insert(st.cc.find(static_cast<int>(i)));
  for (int r : reps) {
    std::vector<Term> adm;
    for (int m : st.cc.class_members(r))
      if (st.admissible(st.cc.term(m))) adm.push_back(st.cc.term(m));
    if (adm.size() < 2) continue;
    Term least = ord.least(adm);
    for (auto& t : adm)
      // marked existentials are already linked to the class by their def
      if (t != least && !t.is_evar()) emit(QFFormula::lit(Literal::eq(t, least)));
  }

  // disequalities and relation atoms expressible over y and marked e's
  auto norm = [&](const Term& t) { return st.least_adm(st.cc, t); };
  for (auto& d : diseqs) {
    auto a = norm(d.lhs()), b = norm(d.rhs());
    if (a && b) emit(QFFormula::lit(Literal::neq(*a, *b)));
  }
  auto has_unmarked = [&](const Literal& l) {
    for (auto& a : l.rel_args())
      if (a.is_evar() && !st.marked.count(a)) return true;
    return false;
  };
  for (auto& l : rels) {
    bool ok = true;
    std::vector<Term> as;
    for (auto& a : l.rel_args()) {
      auto n = norm(a);
      if (!n) {
        ok = false;
        break;
      }
      as.push_back(*n);
    }
    if (ok) emit(QFFormula::lit(Literal::rel_raw(l.rel_name(), as, l.positive())));
  }

  // Resolution between complementary relation atoms sharing unmarked e's:
  // componentwise matching with marked variables treated as parameters
  for (auto& p : rels) {
    if (!p.positive()) continue;
    for (auto& n : rels) {
      if (n.positive() || n.rel_name() != p.rel_name()) continue;
      if (!has_unmarked(p) && !has_unmarked(n)) continue;
      bool ok = true;
      std::vector<std::pair<Term, Term>> eqs;
      for (size_t i = 0; i < p.rel_args().size() && ok; ++i) {
        Term a = p.rel_args()[i], b = n.rel_args()[i];
        if (st.cc.same(a, b)) continue;
        auto na = norm(a), nb = norm(b);
        if (na && nb)
          eqs.push_back({*na, *nb});
        else
          ok = false;
      }
      if (!ok) continue;
      if (eqs.empty()) {
        out.bottom = true;
        return out;
      }
      std::vector<QFFormula> parts;
      for (auto& [a, b] : eqs) parts.push_back(QFFormula::lit(Literal::neq(a, b)));
      emit(QFFormula::disj(std::move(parts)));
    }
  }

  std::sort(out.psi.begin(), out.psi.end(),
            [](const QFFormula& a, const QFFormula& b) { return a.str() < b.str(); });
  return out;
}

}  // namespace covergen
