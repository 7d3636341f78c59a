#pragma once

// Random-case generators shared between the oracle, reach and acceptance
// suites.

#include <string>
#include <vector>

#include "covergen/reach.hpp"
#include "util.hpp"

namespace testutil {

// random e-flat literals over a two-sort acyclic DB signature
struct AcyclicCase {
  Signature sig;
  std::vector<Term> evars;
  std::vector<Term> params;
  std::vector<Literal> lits;
};

inline AcyclicCase random_acyclic_case(Rng& r) {
  AcyclicCase c;
  c.sig.add_sort("S");
  c.sig.add_sort("U");
  int nfn = 1 + r.upto(2);
  std::vector<std::string> fns;
  for (int i = 0; i < nfn; ++i) {
    std::string n = "f" + std::to_string(i + 1);
    c.sig.add_function(n, {"S"}, "U");
    fns.push_back(n);
  }
  bool rel = r.coin();
  if (rel) c.sig.add_relation("R", {"S", "U"});
  int ne = 1 + r.upto(2);
  for (int i = 0; i < ne; ++i) c.evars.push_back(ev("e" + std::to_string(i + 1), "S"));
  std::vector<Term> ys = {pv("ys1", "S")};
  if (r.coin()) ys.push_back(pv("ys2", "S"));
  std::vector<Term> yu = {pv("yu1", "U")};
  if (r.coin()) yu.push_back(pv("yu2", "U"));
  c.params = ys;
  c.params.insert(c.params.end(), yu.begin(), yu.end());
  auto sterm = [&]() { return r.coin() ? c.evars[r.upto(ne)] : ys[r.upto((int)ys.size())]; };
  auto uterm = [&]() -> Term {
    if (r.coin()) return yu[r.upto((int)yu.size())];
    return Term::app(c.sig, fns[r.upto(nfn)], {ys[r.upto((int)ys.size())]});
  };
  int nl = 1 + r.upto(5);
  for (int i = 0; i < nl; ++i) {
    if (rel && r.upto(3) == 0) {
      Term a = sterm(), b = uterm();
      c.lits.push_back(r.coin() ? Literal::rel(c.sig, "R", {a, b})
                                : Literal::nrel(c.sig, "R", {a, b}));
      continue;
    }
    switch (r.upto(4)) {
      case 0:
        c.lits.push_back(Literal::eq(Term::app(c.sig, fns[r.upto(nfn)], {sterm()}), uterm()));
        break;
      case 1:
        c.lits.push_back(Literal::eq(sterm(), sterm()));
        break;
      case 2:
        c.lits.push_back(Literal::neq(sterm(), sterm()));
        break;
      default:
        c.lits.push_back(r.coin() ? Literal::neq(uterm(), uterm())
                                  : Literal::eq(uterm(), uterm()));
        break;
    }
  }
  return c;
}

// Small random transition system: one sort, optional unary f, optional
// binary R, 2 state variables, guarded-update transitions.
inline TransitionSystem random_system(Rng& r) {
  TransitionSystem sys;
  bool with_f = r.coin();
  bool with_rel = !with_f || r.coin();
  sys.sig.add_sort("S");
  if (with_f) sys.sig.add_function("f", {"S"}, "S");
  if (with_rel) sys.sig.add_relation("R", {"S", "S"});
  sys.vars = {pv("x1"), pv("x2")};
  auto term_over = [&](const std::vector<Term>& pool) {
    Term t = pool[r.upto(static_cast<int>(pool.size()))];
    if (with_f && r.upto(3) == 0) t = Term::app(sys.sig, "f", {t});
    return t;
  };
  auto lit_over = [&](const std::vector<Term>& pool) {
    Term a = term_over(pool), b = term_over(pool);
    if (with_rel && r.upto(3) == 0)
      return r.coin() ? QFFormula::lit(Literal::rel(sys.sig, "R", {a, b}))
                      : QFFormula::lit(Literal::nrel(sys.sig, "R", {a, b}));
    return r.coin() ? QFFormula::lit(Literal::eq(a, b)) : QFFormula::lit(Literal::neq(a, b));
  };
  auto formula_over = [&](const std::vector<Term>& pool) {
    std::vector<QFFormula> cs;
    int n = 1 + r.upto(2);
    for (int i = 0; i < n; ++i) {
      if (r.upto(4) == 0)
        cs.push_back(QFFormula::disj({lit_over(pool), lit_over(pool)}));
      else
        cs.push_back(lit_over(pool));
    }
    return QFFormula::conj(std::move(cs));
  };
  std::vector<Term> cur = sys.vars;
  sys.init = formula_over(cur);
  sys.unsafe = formula_over(cur);
  auto branch = [&]() {
    std::vector<QFFormula> cs;
    for (auto& v : sys.vars) {
      switch (r.upto(4)) {
        case 0:
          cs.push_back(QFFormula::lit(Literal::eq(primed(v), v)));
          break;
        case 1:
          cs.push_back(QFFormula::lit(Literal::eq(primed(v), sys.vars[r.upto(2)])));
          break;
        case 2:
          if (with_f) {
            cs.push_back(QFFormula::lit(
                Literal::eq(primed(v), Term::app(sys.sig, "f", {sys.vars[r.upto(2)]}))));
            break;
          }
          [[fallthrough]];
        default:
          break;  // havoc
      }
    }
    if (r.coin()) cs.push_back(lit_over(cur));
    if (cs.empty()) cs.push_back(QFFormula::lit(Literal::eq(sys.vars[0], sys.vars[0])));
    return QFFormula::conj(std::move(cs));
  };
  sys.trans = r.upto(3) == 0 ? QFFormula::disj({branch(), branch()}) : branch();
  return sys;
}

}  // namespace testutil
