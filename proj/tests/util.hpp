#pragma once

// Shared helpers for the test suites: tiny signature builders, term
// shorthands and random generators.

#include <random>
#include <string>
#include <vector>

#include "covergen/core.hpp"
#include "covergen/ordering.hpp"

namespace testutil {

using namespace covergen;

inline Term ev(const std::string& name, const std::string& sort = "S") {
  return Term::var(VarKind::Existential, 0, name, sort);
}
inline Term pv(const std::string& name, const std::string& sort = "S") {
  return Term::var(VarKind::Parameter, 0, name, sort);
}

// One sort S; unary f,g,h1; binary f2,g2; ternary h3; binary relation R.
inline Signature basic_sig() {
  Signature s;
  s.add_sort("S");
  s.add_function("f", {"S"}, "S");
  s.add_function("g", {"S"}, "S");
  s.add_function("h1", {"S"}, "S");
  s.add_function("f2", {"S", "S"}, "S");
  s.add_function("g2", {"S", "S"}, "S");
  s.add_function("h3", {"S", "S", "S"}, "S");
  s.add_relation("R", {"S", "S"});
  return s;
}

struct Rng {
  std::mt19937 g;
  explicit Rng(unsigned seed) : g(seed) {}
  int upto(int n) { return static_cast<int>(g() % static_cast<unsigned>(n)); }  // [0, n)
  bool coin() { return (g() & 1) != 0; }
};

inline Term random_term(Rng& r, const Signature& sig, const std::vector<Term>& leaves,
                        int depth) {
  if (depth <= 0 || r.upto(3) == 0) return leaves[r.upto(static_cast<int>(leaves.size()))];
  const auto& fs = sig.functions();
  const FuncDecl* f = nullptr;
  for (int tries = 0; tries < 10 && !f; ++tries) {
    const FuncDecl& c = fs[r.upto(static_cast<int>(fs.size()))];
    if (!c.args.empty()) f = &c;
  }
  if (!f) return leaves[r.upto(static_cast<int>(leaves.size()))];
  std::vector<Term> args;
  for (size_t i = 0; i < f->args.size(); ++i)
    args.push_back(random_term(r, sig, leaves, depth - 1));
  return Term::app(sig, f->name, args);
}

// Random e-flat literal set over a random DB signature (unary functions,
// one binary relation).
struct DbCase {
  Signature sig;
  std::vector<Term> evars;
  std::vector<Term> params;
  std::vector<Literal> lits;
};

inline DbCase random_db_case(Rng& r, int max_evars = 4, int max_lits = 6,
                             bool with_relation = true) {
  DbCase c;
  c.sig.add_sort("S");
  int nfn = 1 + r.upto(3);
  std::vector<std::string> fns;
  for (int i = 0; i < nfn; ++i) {
    std::string n = "f" + std::to_string(i + 1);
    c.sig.add_function(n, {"S"}, "S");
    fns.push_back(n);
  }
  bool rel = with_relation && r.coin();
  if (rel) c.sig.add_relation("R", {"S", "S"});
  int ne = 1 + r.upto(max_evars);
  for (int i = 0; i < ne; ++i)
    c.evars.push_back(ev("e" + std::to_string(i + 1)));
  int np = 1 + r.upto(3);
  for (int i = 0; i < np; ++i)
    c.params.push_back(pv("y" + std::to_string(i + 1)));
  auto var = [&]() { return r.coin() ? c.evars[r.upto(ne)] : c.params[r.upto(np)]; };
  // e-free term or variable from e: the admissible operand everywhere
  auto atomic = [&]() -> Term {
    if (r.coin()) return var();
    Term base = r.coin() ? c.params[r.upto(np)] : var();
    if (base.e_free() && r.coin()) return Term::app(c.sig, fns[r.upto(nfn)], {base});
    return base;
  };
  int nl = 1 + r.upto(max_lits);
  for (int i = 0; i < nl; ++i) {
    if (rel && r.upto(3) == 0) {
      Term a = atomic(), b = atomic();
      c.lits.push_back(r.coin() ? Literal::rel(c.sig, "R", {a, b})
                                : Literal::nrel(c.sig, "R", {a, b}));
      continue;
    }
    if (r.coin()) {
      c.lits.push_back(Literal::neq(atomic(), atomic()));
    } else {
      Term a = r.coin() ? Term::app(c.sig, fns[r.upto(nfn)], {var()}) : atomic();
      c.lits.push_back(Literal::eq(a, atomic()));
    }
  }
  return c;
}

inline Ordering default_ordering(const Signature& sig, const std::vector<Term>& evars,
                                 const std::vector<Term>& params) {
  return Ordering(Precedence::defaults(sig, evars, params));
}

}  // namespace testutil
