#include <catch_amalgamated.hpp>

#include "oracle/named_lambda.hpp"
#include "pts/generate.hpp"
#include "pts/parse.hpp"
#include "pts/syntax.hpp"

using namespace pts;

namespace {

Expr P(const char* s) { return parseExpr(s); }
Expr PS(const char* s) { return parseExpr(s, true); }

std::vector<Expr> sampleTerms(std::size_t n, std::uint64_t seed) {
  TermGenerator g(seed, 25);
  std::vector<Expr> out;
  for (std::size_t i = 0; i < n; ++i) {
    Judgement j = g.nextAny();
    out.push_back(j.term);
    out.push_back(j.type);
  }
  return out;
}

}  // namespace

TEST_CASE("parse maps the grammar directly") {
  CHECK(alphaEq(P("\\x:*. x"), lam("x", star(), var("x"))));
  CHECK(alphaEq(P("(x:*) -> x -> x"), pi("x", star(), arrow(var("x"), var("x")))));
  CHECK(alphaEq(PS("p.1"), proj1(var("p"))));
  CHECK(alphaEq(P("#"), box()));
  CHECK(alphaEq(P("f a b"), app(app(var("f"), var("a")), var("b"))));
  CHECK(alphaEq(P("A -> B -> C"), arrow(var("A"), arrow(var("B"), var("C")))));
  CHECK(alphaEq(P("f a -> b"), arrow(app(var("f"), var("a")), var("b"))));
  CHECK(alphaEq(P("\\x:*. x y"), lam("x", star(), app(var("x"), var("y")))));
  CHECK(alphaEq(P("x'"), var("x'")));
}

TEST_CASE("parse rejects malformed and out-of-namespace input") {
  CHECK_THROWS_AS(P("\\x:*."), ParseError);
  CHECK_THROWS_AS(P("(x:*"), ParseError);
  CHECK_THROWS_AS(P("_0"), ParseError);
  CHECK_THROWS_AS(P("p.1"), ParseError);
  CHECK_THROWS_AS(P("Sig x:*. x"), ParseError);
  CHECK_THROWS_AS(P("a @[x : * -> *] b"), ParseError);
  CHECK_NOTHROW(parseExpr("_0", ParseOptions{.allowReserved = true}));
}

TEST_CASE("parse errors carry a position") {
  try {
    P("\\x:*. )");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 7);
  }
}

TEST_CASE("print uses the surface lexemes") {
  CHECK(printExpr(lam("x", star(), var("x"))) == "\\x:*. x");
  CHECK(printExpr(box()) == "#");
  CHECK(printExpr(pi("x", star(), var("x"))) == "(x:*) -> x");
  CHECK(printExpr(P("(A -> B) -> C")) == "(A -> B) -> C");
  CHECK(printExpr(P("f (g x)")) == "f (g x)");
  CHECK(printExpr(PS("<a, b> : Sig x:A. B")) == "<a, b> : (Sig x:A. B)");
}

TEST_CASE("printing avoids capturing free names") {
  Expr e = lam("x", star(), app(var("x"), var("x")));
  Expr body = subst(lam("y", star(), app(var("y"), var("x"))), "x", var("y"));
  std::string s = printExpr(body);
  CHECK(alphaEq(P(s.c_str()), body));
  CHECK(alphaEq(P(printExpr(e).c_str()), e));
}

TEST_CASE("parse inverts print on generated terms") {
  for (const Expr& e : sampleTerms(200, 11)) {
    INFO(printExpr(e));
    CHECK(alphaEq(parseExpr(printExpr(e)), e));
  }
}

TEST_CASE("alphaEq is structural over binders") {
  CHECK(alphaEq(P("\\x:*. x"), P("\\y:*. y")));
  CHECK_FALSE(alphaEq(P("\\x:*. x"), P("\\x:*. *")));
  CHECK(alphaEq(P("(x:*) -> x"), P("(z:*) -> z")));
  CHECK_FALSE(alphaEq(P("\\x:*. \\y:*. x"), P("\\x:*. \\y:*. y")));
  CHECK_FALSE(alphaEq(var("x"), var("y")));
}

TEST_CASE("alphaEq agrees with the named oracle") {
  auto terms = sampleTerms(60, 12);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t k = i; k < terms.size() && k < i + 6; ++k) {
      CHECK(alphaEq(terms[i], terms[k]) == oracle::sameTerm(terms[i], terms[k]));
    }
  }
}

TEST_CASE("freeVars") {
  CHECK(freeVars(var("x")) == std::set<std::string>{"x"});
  CHECK(freeVars(P("\\x:A. x")) == std::set<std::string>{"A"});
  CHECK(freeVars(P("(x:A) -> B x")) == std::set<std::string>{"A", "B"});
  CHECK(occursFree(P("\\x:A. y"), "y"));
  CHECK_FALSE(occursFree(P("\\y:A. y"), "y"));
}

TEST_CASE("subst examples") {
  Expr b = P("b c");
  CHECK(alphaEq(subst(var("x"), "x", b), b));
  CHECK(alphaEq(subst(P("\\x:*. x"), "x", b), P("\\x:*. x")));
  // The binder y must not capture the substituted y.
  Expr r = subst(P("\\y:*. x"), "x", var("y"));
  REQUIRE(r.is(Tag::Lam));
  CHECK(occursFree(r, "y"));
  CHECK(alphaEq(r, P("\\z:*. y")));
  CHECK_FALSE(alphaEq(r, P("\\y:*. y")));
  CHECK(printExpr(r) != "\\y:*. y");
}

TEST_CASE("subst agrees with capture-avoiding named substitution") {
  auto terms = sampleTerms(80, 13);
  std::vector<std::string> names{"zero", "succ", "Nat", "X"};
  for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
    for (const auto& x : names) {
      Expr got = subst(terms[i], x, terms[i + 1]);
      auto want = oracle::subst(oracle::fromExpr(terms[i]), x, oracle::fromExpr(terms[i + 1]));
      CHECK(oracle::alphaEq(oracle::fromExpr(got), want));
    }
  }
}

TEST_CASE("substitution laws on generated terms") {
  auto terms = sampleTerms(60, 14);
  for (std::size_t i = 0; i + 2 < terms.size(); ++i) {
    const Expr& e = terms[i];
    const Expr& b = terms[i + 1];
    const Expr& c = terms[i + 2];
    CHECK(alphaEq(subst(e, "Nat", var("Nat")), e));
    CHECK(alphaEq(subst(e, "absent", b), e));
    // Composition on distinct variables, x not free in c.
    std::string x = "zero", y = "Nat";
    if (occursFree(c, x)) continue;
    Expr lhs = subst(subst(e, x, b), y, c);
    Expr rhs = subst(subst(e, y, c), x, subst(b, y, c));
    CHECK(alphaEq(lhs, rhs));
  }
}

TEST_CASE("substMany replaces simultaneously") {
  Expr e = P("f x y");
  Expr r = substMany(e, {{"x", var("y")}, {"y", var("x")}});
  CHECK(alphaEq(r, P("f y x")));
}

TEST_CASE("instantiate, open and abstract") {
  Expr l = P("\\x:*. f x");
  Expr body = l.child(1);
  CHECK(alphaEq(instantiate(body, var("a")), P("f a")));
  CHECK(alphaEq(open(body, "q"), P("f q")));
  CHECK(alphaEq(abstract(P("f q"), "q"), body));
}

TEST_CASE("paths address and replace subterms") {
  Expr e = P("f (g x)");
  Path p{1, 1};
  CHECK(alphaEq(subtermAt(e, p), var("x")));
  CHECK(alphaEq(replaceAt(e, p, var("y")), P("f (g y)")));
  CHECK(renderPath({}) == "/");
  CHECK(renderPath({0, 1}) == "/0/1");
}

TEST_CASE("reserved names") {
  CHECK(isReservedName("_0"));
  CHECK(isReservedName("_w$x"));
  CHECK_FALSE(isReservedName("x"));
  CHECK(mentionsReservedName(parseExpr("\\a:_0. a", ParseOptions{.allowReserved = true})));
  CHECK_FALSE(mentionsReservedName(P("\\a:*. a")));
}

TEST_CASE("freshName avoids the context") {
  Context c;
  c.push("x", star());
  std::string n = freshName("x", c);
  CHECK(n != "x");
  CHECK_FALSE(c.contains(n));
  CHECK(freshName("y", c) == "y");
}

TEST_CASE("context lookup finds the latest binding") {
  Context c = parseContext("A : *\nx : A\nA : # \n");
  REQUIRE(c.size() == 3);
  CHECK(alphaEq(c.find("A")->type, box()));
  CHECK(c.find("zz") == nullptr);
  CHECK(printContext(parseContext("A : *\nx : A\n")) == "A : *\nx : A\n");
}

TEST_CASE("context parse errors name the line") {
  try {
    parseContext("A : *\nx A\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}
