#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covergen/flatten.hpp"
#include "covergen/solver.hpp"
#include "util.hpp"

using namespace covergen;
using testutil::ev;
using testutil::pv;

TEST_CASE("flattening the nested disequality") {
  Signature s;
  s.add_sort("S");
  s.add_function("f", {"S", "S"}, "S");
  Term e = ev("e");
  Term y1 = pv("y1"), y2 = pv("y2"), y1p = pv("y1p"), y2p = pv("y2p");
  Term lhs = Term::app(s, "f", {Term::app(s, "f", {e, y1}), y2});
  Term rhs = Term::app(s, "f", {Term::app(s, "f", {e, y1p}), y2p});
  auto r = flatten({Literal::neq(lhs, rhs)}, {e});
  REQUIRE(r.lits.size() == 5);
  REQUIRE(r.evars.size() == 5);
  Term e1 = r.evars[1], e2 = r.evars[2], e3 = r.evars[3], e4 = r.evars[4];
  CHECK(r.lits[0] == Literal::eq(Term::app(s, "f", {e, y1}), e1));
  CHECK(r.lits[1] == Literal::eq(Term::app(s, "f", {e1, y2}), e2));
  CHECK(r.lits[2] == Literal::eq(Term::app(s, "f", {e, y1p}), e3));
  CHECK(r.lits[3] == Literal::eq(Term::app(s, "f", {e3, y2p}), e4));
  CHECK(r.lits[4] == Literal::neq(e2, e4));
  for (auto& l : r.lits) CHECK(is_e_flat(l));
}

TEST_CASE("already flat input is unchanged") {
  Signature s = testutil::basic_sig();
  Term e = ev("e"), e2 = ev("e2");
  std::vector<Literal> body = {Literal::eq(Term::app(s, "f2", {e, pv("y1")}), e2)};
  auto r = flatten(body, {e, e2});
  CHECK(r.lits == body);
  CHECK(r.evars.size() == 2);
}

TEST_CASE("e-free arguments need no naming") {
  Signature s = testutil::basic_sig();
  Term e = ev("e");
  std::vector<Literal> body = {
      Literal::eq(Term::app(s, "f2", {e, Term::app(s, "g", {pv("y1")})}), pv("y2"))};
  auto r = flatten(body, {e});
  CHECK(r.lits == body);
}

TEST_CASE("memoization names repeated subterms once") {
  Signature s = testutil::basic_sig();
  Term e = ev("e"), y1 = pv("y1");
  Term fe = Term::app(s, "f", {e});
  std::vector<Literal> body = {
      Literal::neq(Term::app(s, "g", {fe}), y1),
      Literal::neq(Term::app(s, "h1", {fe}), y1),
  };
  auto r = flatten(body, {e});
  CHECK(r.evars.size() == 1 + 3);  // f(e) once, plus the two outer terms
  int defs_of_fe = 0;
  for (auto& l : r.lits)
    if (l.positive() && (l.lhs() == fe || l.rhs() == fe)) ++defs_of_fe;
  CHECK(defs_of_fe == 1);
}

TEST_CASE("flattening preserves satisfiability content") {
  testutil::Rng rng(7);
  for (int it = 0; it < 200; ++it) {
    Signature s = testutil::basic_sig();
    std::vector<Term> evars = {ev("ea"), ev("eb")};
    std::vector<Term> leaves = {evars[0], evars[1], pv("y1"), pv("y2")};
    std::vector<Literal> body;
    int nl = 1 + rng.upto(4);
    for (int i = 0; i < nl; ++i) {
      Term a = testutil::random_term(rng, s, leaves, 2);
      Term b = testutil::random_term(rng, s, leaves, 2);
      body.push_back(rng.coin() ? Literal::eq(a, b) : Literal::neq(a, b));
    }
    auto r = flatten(body, evars);
    for (auto& l : r.lits) CHECK(is_e_flat(l));
    // the flat set entails the original body, and the original body plus the
    // introduced definitions entails the flat set
    std::vector<QFFormula> flat, orig;
    for (auto& l : r.lits) flat.push_back(QFFormula::lit(l));
    for (auto& l : body) orig.push_back(QFFormula::lit(l));
    QFFormula flatf = QFFormula::conj(flat);
    QFFormula origf = QFFormula::conj(orig);
    CHECK(entails(s, flatf, origf));
    // definitions are exactly the added literals, so this direction needs them
    std::vector<QFFormula> both = {origf};
    for (auto& l : r.lits)
      if (std::find(body.begin(), body.end(), l) == body.end())
        both.push_back(QFFormula::lit(l));
    CHECK(entails(s, QFFormula::conj(both), flatf));
    // idempotence
    auto r2 = flatten(r.lits, r.evars);
    CHECK(r2.lits == r.lits);
    CHECK(r2.evars.size() == r.evars.size());
  }
}
