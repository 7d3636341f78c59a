#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "covergen/cli.hpp"
#include "covergen/parser.hpp"

using namespace covergen;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) {
  return std::string(COVERGEN_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("parser: nested cover query with inferred parameters") {
  Problem p = parse_spec(cli::read_file(data("example1.cov")));
  REQUIRE(p.cover.has_value());
  CHECK(p.cover->evars.size() == 1);
  CHECK(p.cover->params.size() == 4);
  CHECK(p.cover->body.size() == 1);
  CHECK(!p.cover->body[0].positive());
  for (auto& y : p.cover->params) CHECK(y.sort() == "S");
}

TEST_CASE("parser: errors carry positions") {
  CHECK_THROWS_WITH_AS(parse_spec(""), "1:1: empty input", ParseError);
  CHECK_THROWS_AS(parse_spec("(signature (sorts S)) (cover"), ParseError);
  // undeclared sort names the symbol
  try {
    parse_spec("(signature (sorts S) (functions (f (T) S)))");
    FAIL("expected a sort error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("T") != std::string::npos);
  }
  // conflicting inferred sorts
  CHECK_THROWS_AS(
      parse_spec("(signature (sorts S U) (functions (f (S) U)))"
                 "(cover (exists ((e S))) (and (= (f e) y1) (= e y1)))"),
      ParseError);
}

TEST_CASE("parser: theory forms and systems") {
  Problem p = parse_spec(
      "(signature (sorts S) (functions (f (S) S)))"
      "(theory (undef-axioms))"
      "(system (vars (x1 S) (x2 S))"
      "  (init (= x1 x2))"
      "  (trans (or (= x1' (f x1)) (and (= x1' x1) (= x2' x2))))"
      "  (unsafe (not (= x1 x2))))");
  REQUIRE(p.system.has_value());
  CHECK(p.system->theory.undef);
  CHECK(p.system->vars.size() == 2);
  CHECK(p.system->trans.kind() == QFFormula::Kind::Or);

  Problem q = parse_spec(
      "(signature (sorts S) (functions (f (S) S) (c () S)))"
      "(theory (axiom (forall (x S) (not (= (f x) c)))))"
      "(cover (exists ((e S))) (= (f e) y1))");
  REQUIRE(q.theory.axioms.size() == 1);
  CHECK(q.theory.axioms[0].body.kind() == QFFormula::Kind::Lit);
}

TEST_CASE("parser round-trips the printer") {
  std::string text =
      "(signature (sorts S) (functions (f (S S) S)) (relations (R (S S))))"
      "(cover (exists ((e S))) (and (= (f e y1) y2) (not (R e y2)) (not (= e y1))))";
  Problem p = parse_spec(text);
  REQUIRE(p.cover.has_value());
  // print each literal and feed it back through a fresh parse
  std::string again = "(signature (sorts S) (functions (f (S S) S)) (relations (R (S S))))"
                      "(cover (exists ((e S))) (and";
  for (auto& l : p.cover->body) again += " " + l.str();
  again += "))";
  Problem p2 = parse_spec(again);
  REQUIRE(p2.cover->body.size() == p.cover->body.size());
  for (size_t i = 0; i < p.cover->body.size(); ++i)
    CHECK(p2.cover->body[i] == p.cover->body[i]);
}

TEST_CASE("cover command: nested two-image query") {
  auto r = run({"cover", data("example1.cov")});
  CHECK(r.code == 0);
  CHECK(r.out == "(=> (and (= y1 y1p) (= y2 y2p)) false)\n");
}

TEST_CASE("cover command: composition example with and without subsumption") {
  auto r = run({"cover", data("gm.cov")});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "(=> (and (= y1 y3) (= y2 y3)) (= (f s1 s1) t))\n"
        "(=> (and (= y1 y3) (= y2 y4)) (= (f s1 s2) t))\n"
        "(=> (and (= y1 y4) (= y2 y3)) (= (f s2 s1) t))\n"
        "(=> (and (= y1 y4) (= y2 y4)) (= (f s2 s2) t))\n"
        "(=> (= y3 y4) (= s1 s2))\n");

  auto rn = run({"cover", data("gm.cov"), "--no-subsumption"});
  CHECK(rn.code == 0);
  // the unsubsumed run keeps every derived e-free clause: all five cover
  // clauses plus redundant variants, among them the conditional collapse
  // of s1 and s2 under y1=y3=y4 (here with its constraint normalized)
  for (auto& line : {"(=> (and (= y1 y3) (= y2 y3)) (= (f s1 s1) t))",
                     "(=> (= y3 y4) (= s1 s2))",
                     "(=> (and (= y1 y4) (= y3 y4)) (= s1 s2))"})
    CHECK_MESSAGE(rn.out.find(line) != std::string::npos, "missing: " << line);
  CHECK(rn.out.size() > r.out.size());
}

TEST_CASE("cover command: --check certifies the result") {
  auto r = run({"cover", data("example1.cov"), "--check", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("check residue: ok") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("cover command: dag output on a DB signature") {
  std::string f = std::string(COVERGEN_DATA_DIR) + "/../build/tmp_dag.cov";
  {
    std::ofstream o(f);
    o << "(signature (sorts S) (functions (f (S) S) (g (S) S)))"
         "(cover (exists ((e S))) (and (= (f e) y1) (= (g e) y2) (= e y3)))";
  }
  auto r = run({"cover", f, "--dag"});
  CHECK(r.code == 0);
  // e is definable from y3; the clauses stay in dag form over the defined e
  CHECK(r.out.find("(def e y3)") != std::string::npos);
  CHECK(r.out.find("(= (f e) y1)") != std::string::npos);
  CHECK(r.out.find("(= (g e) y2)") != std::string::npos);
}

TEST_CASE("saturate command prints the trace") {
  auto r = run({"saturate", data("example1.cov")});
  CHECK(r.code == 0);
  CHECK(r.out.find("; ") != std::string::npos);
  CHECK(r.out.find("input") != std::string::npos);
}

TEST_CASE("safety command: stutter system") {
  auto r = run({"safety", data("stutter.sys")});
  CHECK(r.code == 0);
  CHECK(r.out.substr(0, 5) == "safe\n");
  CHECK(r.out.find("invariant ") != std::string::npos);

  auto rc = run({"safety", data("stutter.sys"), "--check", "2"});
  CHECK(rc.code == 0);
  CHECK(rc.out.find("certificate: ok") != std::string::npos);
}

TEST_CASE("safety command: unsafe and budget exits") {
  std::string base = std::string(COVERGEN_DATA_DIR) + "/../build/";
  {
    std::ofstream o(base + "tmp_unsafe.sys");
    o << "(signature (sorts S))"
         "(system (vars (x1 S) (x2 S))"
         " (init (= x1 x2)) (trans (= x1' x2)) (unsafe (= x1 x2)))";
  }
  auto r = run({"safety", base + "tmp_unsafe.sys", "--check", "2"});
  CHECK(r.code == 1);
  CHECK(r.out.find("unsafe 0") != std::string::npos);
  CHECK(r.out.find("certificate: ok") != std::string::npos);

  {
    // the backward frontier walks an unbounded chain x1=b, x1=f(b), ... and
    // the contradictory init is never hit, so only the budget stops the loop
    std::ofstream o(base + "tmp_diverge.sys");
    o << "(signature (sorts S) (functions (f (S) S) (b () S)))"
         "(system (vars (x1 S))"
         " (init (not (= x1 x1))) (trans (= x1 (f x1'))) (unsafe (= x1 b)))";
  }
  auto d = run({"safety", base + "tmp_diverge.sys", "--max-iter", "4"});
  CHECK(d.code == 3);
  CHECK(d.out.find("budget exceeded") != std::string::npos);
}

TEST_CASE("error handling exits with 2") {
  auto r = run({"cover", "/nonexistent.cov"});
  CHECK(r.code == 2);
  CHECK(r.err.find("error:") != std::string::npos);
  auto b = run({"bogus-command"});
  CHECK(b.code == 2);
}
