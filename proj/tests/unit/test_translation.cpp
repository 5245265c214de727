#include <catch_amalgamated.hpp>

#include "pts/corpus.hpp"
#include "pts/generate.hpp"
#include "pts/parse.hpp"
#include "pts/translation.hpp"
#include "pts/typing.hpp"

using namespace pts;

namespace {

Expr P(const char* s) { return parseExpr(s); }
Expr R(const char* s) { return parseExpr(s, ParseOptions{.allowReserved = true}); }
Context C(const char* s) { return parseContext(s); }

bool sameBindings(const Context& got, const std::vector<std::pair<std::string, Expr>>& want) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < want.size(); ++i) {
    const auto& b = got.bindings()[i];
    if (b.name != want[i].first || !alphaEq(b.type, want[i].second)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("vKind examples") {
  CHECK(alphaEq(vKind(star()), star()));
  CHECK(alphaEq(vKind(box()), star()));
  CHECK(alphaEq(vKind(P("(x:*) -> *")), P("* -> *")));
  CHECK(alphaEq(vKind(P("(x:A) -> *")), star()));
  CHECK(alphaEq(vKind(P("(F:* -> *) -> A -> *")), P("(* -> *) -> *")));
  CHECK_THROWS_AS(vKind(var("A")), TranslationError);
  CHECK_THROWS_AS(vKind(P("A -> A")), TranslationError);
}

TEST_CASE("transType examples") {
  TransEnv env;
  CHECK(alphaEq(transType(env, star()), R("_0")));
  CHECK(alphaEq(transType(env, box()), R("_0")));
  CHECK(alphaEq(transType(env, P("(x:*) -> x -> x")), R("(x:*) -> _0 -> x -> x")));
  TransEnv a(C("A : *\n"));
  CHECK(alphaEq(transType(a, P("A -> *")), R("A -> _0")));
  CHECK(alphaEq(transType(a, var("A")), var("A")));
}

TEST_CASE("transType drops term dependencies") {
  TransEnv env(C("N : *\nP : N -> *\n"));
  // (n:N) -> P n has a term binder, so the dependency goes.
  CHECK(alphaEq(transType(env, P("(n:N) -> P n")), P("N -> P")));
  CHECK(alphaEq(transType(env, P("\\n:N. P n")), var("P")));
}

TEST_CASE("transCtx examples") {
  CHECK(sameBindings(transCtx({}), {{"_0", star()}, {"_z", P("(x:*) -> x")}}));
  CHECK(sameBindings(transCtx(C("A : *\n")),
                     {{"_0", star()}, {"_z", P("(x:*) -> x")}, {"A", star()}, {"_w$A", R("_0")}}));
  CHECK(sameBindings(transCtx(C("A : *\nx : A\n")), {{"_0", star()},
                                                     {"_z", P("(x:*) -> x")},
                                                     {"A", star()},
                                                     {"_w$A", R("_0")},
                                                     {"x", var("A")}}));
  Context k = transCtx(C("F : * -> *\n"));
  REQUIRE(k.size() == 4);
  CHECK(alphaEq(k.find("F")->type, P("* -> *")));
  CHECK(alphaEq(k.find("_w$F")->type, R("(x:*) -> _0 -> _0")));
}

TEST_CASE("translated contexts are F-omega contexts") {
  for (const auto& e : loadCorpus(PTS_CORPUS_DIR)) {
    if (!e.isCoreCC()) continue;
    INFO(e.name);
    CHECK_NOTHROW(wfContext(PtsSpec::fomega(), transCtx(e.ctx)));
  }
}

TEST_CASE("canonical examples") {
  CHECK(alphaEq(canonical(star()), R("_0")));
  CHECK(alphaEq(canonical(R("_0")), R("_z _0")));
  CHECK(alphaEq(canonical(P("* -> *")), R("\\x:*. _0")));
  CHECK(alphaEq(canonical(R("_0 -> _0")), R("_z (_0 -> _0)")));
}

TEST_CASE("canonical inhabitants check in the translated context") {
  for (const auto& e : loadCorpus(PTS_CORPUS_DIR)) {
    if (!e.isCoreCC()) continue;
    TransEnv env(e.ctx);
    env.logCanonical = true;
    transTerm(env, e.term);
    for (const auto& use : env.canonicalLog) {
      Context fctx = transCtx(use.ccContext);
      INFO(e.name << ": c^" << printExpr(use.type));
      CHECK_NOTHROW(checkType(PtsSpec::fomega(), fctx, canonical(use.type), use.type));
    }
  }
}

TEST_CASE("transTerm examples") {
  TransEnv env;
  CHECK(alphaEq(transTerm(env, star()), R("_z _0")));

  TransEnv e(C("A : *\na : A\n"));
  CHECK(alphaEq(transTerm(e, P("(\\x:A. x) a")), R("(\\_y:_0. \\x:A. x) _w$A a")));

  TransEnv f(C("F : (x:*) -> x -> x\nA : *\n"));
  Expr fa = transTerm(f, P("F A"));
  CHECK(alphaEq(fa, R("F A _w$A")));
  CHECK(alphaEq(fa, app(app(transTerm(f, var("F")), transType(f, var("A"))), transTerm(f, var("A")))));

  TransEnv g(C("F : * -> *\nA : *\n"));
  CHECK(alphaEq(transTerm(g, P("F A")), R("_w$F A _w$A")));
}

TEST_CASE("lambda over a kind gets the witness binder") {
  TransEnv env;
  Expr t = transTerm(env, P("\\A:*. A"));
  CHECK(alphaEq(t, R("(\\_y:_0. \\A:*. \\_w$A:_0. _w$A) (_z _0)")));
}

TEST_CASE("the two Pi substitutions commute") {
  TransEnv env(C("X : *\n"));
  Expr cod = transTerm(env, P("X -> X"));
  Expr cx = canonical(vKind(star()));
  Expr cw = canonical(transType(env, star()));
  Expr one = subst(subst(cod, "X", cx), witnessName("X"), cw);
  Expr two = subst(subst(cod, witnessName("X"), cw), "X", cx);
  CHECK(alphaEq(one, two));

  TransEnv top;
  Expr pi = transTerm(top, P("(X:*) -> X -> X"));
  REQUIRE(pi.is(Tag::App));
  CHECK(alphaEq(pi.child(1), one));
  CHECK(alphaEq(pi.child(0), app(canonical(R("_0 -> _0 -> _0")), transTerm(top, star()))));
}

TEST_CASE("translation rejects reserved names and box") {
  TransEnv env;
  CHECK_THROWS_AS(transTerm(env, var("_0")), TranslationError);
  CHECK_THROWS_AS(transType(env, var("_w$x")), TranslationError);
  Context bad;
  bad.push("_q", star());
  CHECK_THROWS_AS(transCtx(bad), TranslationError);
  CHECK_THROWS_AS(transTerm(env, box()), TranslationError);
  CHECK_THROWS_AS(transTerm(env, var("nowhere")), TranslationError);
}

TEST_CASE("translation is deterministic up to alpha") {
  TransEnv a, b;
  CHECK(alphaEq(transTerm(a, P("\\x:*. \\y:x. y")), transTerm(b, P("\\T:*. \\v:T. v"))));
  TermGenerator g(41, 25);
  for (int i = 0; i < 60; ++i) {
    Judgement j = g.nextAny();
    TransEnv e1(j.ctx), e2(j.ctx);
    e2.freshCounter = 1000;
    CHECK(alphaEq(transTerm(e1, j.term), transTerm(e2, j.term)));
  }
}

TEST_CASE("checkTranslation examples") {
  CHECK(checkTranslation(C("A : *\nx : A\n"), var("x")).ok());
  Report poly = checkTranslation({}, P("\\A:*. \\x:A. x"));
  CHECK(poly.ok());
  TransEnv env;
  CHECK(alphaEq(transType(env, P("(A:*) -> A -> A")), R("(A:*) -> _0 -> A -> A")));
  Report s = checkTranslation({}, star());
  CHECK(s.ok());
  CHECK_FALSE(s.lines.empty());
}

TEST_CASE("checkTranslation fails loudly outside its domain") {
  Report r = checkTranslation(C("A : *\n"), P("\\x:A. x x"));
  CHECK_FALSE(r.ok());
}

TEST_CASE("translation soundness on generated terms") {
  TermGenerator g(42, 25);
  for (int i = 0; i < 80; ++i) {
    Judgement j = g.nextAny();
    Report r = checkTranslation(j.ctx, j.term);
    INFO(r.render());
    CHECK(r.ok());
  }
}

TEST_CASE("type translation preserves conversion") {
  TermGenerator g(43, 25);
  for (int i = 0; i < 80; ++i) {
    Judgement j = g.nextAny();
    TransEnv env(j.ctx);
    Expr base = transType(env, j.type);
    for (const Expr& s : stepAll(j.type)) {
      CHECK(betaEq(base, transType(env, s)) == Conv::Equal);
    }
    CHECK(betaEq(base, transType(env, normalize(j.type).term)) == Conv::Equal);
  }
}

TEST_CASE("reduction preservation") {
  Context ctx = C("A : *\nB : *\nb : B\n");
  CHECK(checkReductionPreservation(ctx, P("(\\x:B. x) b"), 8).ok());
  CHECK(checkReductionPreservation(ctx, P("\\y:(\\X:*. X) A. y"), 8).ok());
  Report nf = checkReductionPreservation(ctx, var("b"), 8);
  CHECK(nf.ok());
  TermGenerator g(44, 25);
  for (int i = 0; i < 40; ++i) {
    Judgement j = g.next();
    Report r = checkReductionPreservation(j.ctx, j.term, 12);
    INFO(r.render());
    CHECK(r.ok());
  }
}

TEST_CASE("substitution lemma examples") {
  Context ctx = C("N : *\nx : *\n");
  CHECK(checkSubstLemmas(ctx, var("x"), "x", var("N")).ok());
  CHECK(checkSubstLemmas(ctx, P("N -> N"), "x", var("N")).ok());
  Report r = checkSubstLemmas(ctx, P("x -> x"), "x", P("(\\y:*. y) N"));
  INFO(r.render());
  CHECK(r.ok());
  CHECK_FALSE(r.lines.empty());
  Context t = C("N : *\nm : N\nn : N\n");
  CHECK(checkSubstLemmas(t, var("n"), "n", var("m")).ok());
}

TEST_CASE("substitution lemmas on generated instances") {
  TermGenerator g(45, 25);
  for (int i = 0; i < 40; ++i) {
    SubstInstance s = g.nextSubstInstance();
    Report r = checkSubstLemmas(s.ctx, s.a, s.x, s.b);
    INFO(r.render());
    CHECK(r.ok());
  }
}

TEST_CASE("renderJudgement") {
  CHECK(renderJudgement({}, star(), box()) == "|- * : #");
  CHECK(renderJudgement(C("A : *\n"), var("A"), star()) == "A : * |- A : *");
}
