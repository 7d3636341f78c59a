#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covergen/calculus.hpp"
#include "util.hpp"

using namespace covergen;
using testutil::ev;
using testutil::pv;

namespace {

Signature usig() {
  Signature s;
  s.add_sort("S");
  s.add_function("f", {"S"}, "S");
  s.add_function("g", {"S"}, "S");
  return s;
}

SaturateOpts undef_opts() {
  SaturateOpts o;
  o.undef = true;
  return o;
}

}  // namespace

TEST_CASE("ext_undef rule") {
  Signature s = usig();
  Term e1 = ev("e1"), e2 = ev("e2"), y1 = pv("y1");
  Term u = undef_const("S");
  auto r = ext_undef(ConstrainedLiteral(Literal::eq(Term::app(s, "f", {e1}), y1), {}));
  REQUIRE(r.has_value());
  CHECK(*r == ConstrainedLiteral(Literal::eq(e1, u), Constraint::of({{y1, u}})));
  // right side not e-free
  CHECK(!ext_undef(ConstrainedLiteral(Literal::eq(Term::app(s, "f", {e1}), e2), {}))
             .has_value());
  // constraint union
  Term gy1 = Term::app(s, "g", {y1});
  Constraint d = Constraint::of({{pv("y2"), pv("y3")}});
  auto r3 = ext_undef(ConstrainedLiteral(Literal::eq(Term::app(s, "f", {e1}), gy1), d));
  REQUIRE(r3.has_value());
  CHECK(*r3 == ConstrainedLiteral(Literal::eq(e1, u),
                                  Constraint::of({{pv("y2"), pv("y3")}, {gy1, u}})));
}

TEST_CASE("paramodulation rule") {
  Signature s = usig();
  Term e1 = ev("e1"), e2 = ev("e2"), y1 = pv("y1"), y2 = pv("y2");
  Term u = undef_const("S");
  Ordering ord = testutil::default_ordering(s, {e1, e2}, {y1, y2});

  ConstrainedLiteral fu(Literal::eq(Term::app(s, "f", {e1}), u), {});
  auto r = paramodulate(ConstrainedLiteral(Literal::eq(e1, e2), {}), fu, LitPos{0, 0}, ord);
  REQUIRE(r.has_value());
  CHECK(*r == ConstrainedLiteral(Literal::eq(Term::app(s, "f", {e2}), u), {}));

  Constraint d = Constraint::of({{y1, y2}});
  ConstrainedLiteral fy(Literal::eq(Term::app(s, "f", {e1}), y2), {});
  auto r2 = paramodulate(ConstrainedLiteral(Literal::eq(e1, y1), d), fy, LitPos{0, 0}, ord);
  REQUIRE(r2.has_value());
  CHECK(*r2 == ConstrainedLiteral(Literal::eq(Term::app(s, "f", {y1}), y2), d));

  // left premise must rewrite an existential variable
  CHECK(!paramodulate(fy, fu, LitPos{0, 0}, ord).has_value());
}

TEST_CASE("undef saturation: undefined image forces the other image undefined") {
  Signature s = usig();
  Term e = ev("e"), y1 = pv("y1");
  Term u = undef_const("S");
  Ordering ord = testutil::default_ordering(s, {e}, {y1});
  Saturation sat = saturate(s,
                            {Literal::eq(Term::app(s, "f", {e}), u),
                             Literal::eq(Term::app(s, "g", {e}), y1)},
                            ord, undef_opts());
  Theory th;
  th.undef = true;
  QFFormula cover = sat.cover_formula(true);
  CHECK(entails(s, cover, QFFormula::lit(Literal::eq(y1, u)), th));
  // and the cover is sound: the input entails it (with e as a free constant)
  QFFormula phi = QFFormula::conj({QFFormula::lit(Literal::eq(Term::app(s, "f", {e}), u)),
                                   QFFormula::lit(Literal::eq(Term::app(s, "g", {e}), y1))});
  CHECK(entails(s, phi, cover, th));
}

TEST_CASE("undef saturation: defined witness forces a defined image") {
  Signature s = usig();
  Term e = ev("e"), y1 = pv("y1");
  Term u = undef_const("S");
  Ordering ord = testutil::default_ordering(s, {e}, {y1});
  Saturation sat = saturate(
      s, {Literal::eq(Term::app(s, "f", {e}), y1), Literal::neq(e, u)}, ord, undef_opts());
  Theory th;
  th.undef = true;
  QFFormula cover = sat.cover_formula(true);
  CHECK(entails(s, cover, QFFormula::lit(Literal::neq(y1, u)), th));
  QFFormula phi = QFFormula::conj({QFFormula::lit(Literal::eq(Term::app(s, "f", {e}), y1)),
                                   QFFormula::lit(Literal::neq(e, u))});
  CHECK(entails(s, phi, cover, th));
}

TEST_CASE("undef saturation: inert inputs match the plain calculus") {
  Signature s;
  s.add_sort("S");
  s.add_relation("R", {"S", "S"});
  Term e = ev("e"), y1 = pv("y1"), y2 = pv("y2");
  Ordering ord = testutil::default_ordering(s, {e}, {y1, y2});
  std::vector<Literal> in = {Literal::rel(s, "R", {e, y1}), Literal::nrel(s, "R", {e, y2})};
  Saturation plain = saturate(s, in, ord);
  Saturation und = saturate(s, in, ord, undef_opts());
  auto a = plain.cover_clauses(true), b = und.cover_clauses(true);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("undef saturation stays sound on random unary inputs") {
  testutil::Rng rng(4242);
  Theory th;
  th.undef = true;
  for (int it = 0; it < 80; ++it) {
    auto c = testutil::random_db_case(rng, 3, 5, /*with_relation=*/false);
    Term u = undef_const("S");
    // sprinkle undef in: declare some variables (un)defined
    std::vector<Literal> lits = c.lits;
    for (auto& e : c.evars)
      if (rng.upto(3) == 0)
        lits.push_back(rng.coin() ? Literal::eq(e, u) : Literal::neq(e, u));
    Ordering ord = testutil::default_ordering(c.sig, c.evars, c.params);
    Saturation sat = saturate(c.sig, lits, ord, undef_opts());
    std::vector<QFFormula> in;
    for (auto& l : lits) in.push_back(QFFormula::lit(l));
    QFFormula phi = QFFormula::conj(in);
    CHECK(entails(c.sig, phi, sat.cover_formula(true), th));
  }
}
