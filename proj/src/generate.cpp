#include "pts/generate.hpp"

#include <algorithm>

#include "pts/parse.hpp"
#include "pts/reduction.hpp"
#include "pts/typing.hpp"

namespace pts {

namespace {

const PtsSpec& cc() {
  static const PtsSpec s = PtsSpec::cc();
  return s;
}

bool same(const Expr& a, const Expr& b) { return betaEq(a, b, 2000) == Conv::Equal; }

bool isStar(const Expr& e) { return e.is(Tag::Sort) && e.name() == "*"; }

Expr polyId() { return lam("X", star(), lam("y", var("X"), var("y"))); }
Expr typeId() { return lam("Y", star(), var("Y")); }

Expr parseBase(const char* text) { return parseExpr(text); }

}  // namespace

TermGenerator::TermGenerator(std::uint64_t seed, std::size_t maxSize)
    : rng_(seed), maxSize_(maxSize) {}

Context TermGenerator::baseContext() {
  static const Context ctx = [] {
    Context c;
    c.push("Nat", star());
    c.push("zero", var("Nat"));
    c.push("succ", parseBase("Nat -> Nat"));
    c.push("Bool", star());
    c.push("true", var("Bool"));
    c.push("List", parseBase("* -> *"));
    c.push("nil", parseBase("(A:*) -> List A"));
    c.push("Vec", parseBase("Nat -> *"));
    c.push("vnil", parseBase("Vec zero"));
    c.push("P", parseBase("Nat -> *"));
    c.push("p", parseBase("(n:Nat) -> P n"));
    c.push("F", parseBase("* -> *"));
    return c;
  }();
  return ctx;
}

Expr TermGenerator::genType(const Context& ctx, int budget) {
  std::vector<Expr> atoms;
  for (const auto& b : ctx.bindings()) {
    if (isStar(b.type)) atoms.push_back(var(b.name));
  }
  auto atom = [&] { return atoms[std::uniform_int_distribution<std::size_t>(0, atoms.size() - 1)(rng_)]; };
  if (budget <= 0 || atoms.empty()) return atoms.empty() ? Expr{} : atom();
  switch (std::uniform_int_distribution<int>(0, 6)(rng_)) {
    case 0:
    case 1:
      return atom();
    case 2: {
      Expr a = genType(ctx, budget - 1);
      Expr b = genType(ctx, budget - 1);
      return a && b ? arrow(a, b) : Expr{};
    }
    case 3: {
      Expr a = genType(ctx, budget - 1);
      if (!a) return a;
      return app(var(ctx.contains("List") ? "List" : "F"), a);
    }
    case 4: {
      Expr a = genType(ctx, budget - 1);
      return a ? app(typeId(), a) : a;
    }
    case 5: {
      if (!ctx.contains("Vec")) return atom();
      return app(var("Vec"), var("zero"));
    }
    default: {
      std::string x = freshName("A", ctx);
      Context inner = ctx.extended(x, star());
      Expr body = genType(inner, budget - 1);
      return body ? pi(x, star(), body) : body;
    }
  }
}

Expr TermGenerator::gen(const Context& ctx, const Expr& target, int budget) {
  enum Strategy { Var, Lam, Apply, Redex, PolyId, TypeForm, AnnotRedex };
  std::vector<Strategy> order{Var, Lam, Apply, Redex, PolyId, TypeForm, AnnotRedex};
  std::shuffle(order.begin(), order.end(), rng_);
  Reduced w = whnf(target, 2000);
  if (w.exhausted) return {};
  const Expr& head = w.term;
  bool targetIsType = false;
  try {
    targetIsType = isStar(normalize(inferType(cc(), ctx, target, 2000), 2000).term);
  } catch (const TypeError&) {
    return {};
  }
  auto fresh = [&](const char* hint) { return freshName(std::string(hint) + std::to_string(++counter_), ctx); };

  for (Strategy s : order) {
    switch (s) {
      case Var: {
        std::vector<std::string> hits;
        for (const auto& b : ctx.bindings()) {
          if (same(b.type, target)) hits.push_back(b.name);
        }
        if (!hits.empty()) return var(hits[std::uniform_int_distribution<std::size_t>(0, hits.size() - 1)(rng_)]);
        break;
      }
      case Lam:
      case AnnotRedex: {
        if (!head.is(Tag::Pi) || budget <= 0) break;
        std::string x = fresh("v");
        const Expr& dom = head.child(0);
        Expr annot = dom;
        if (s == AnnotRedex) {
          bool domIsType = false;
          try {
            domIsType = isStar(normalize(inferType(cc(), ctx, dom, 2000), 2000).term);
          } catch (const TypeError&) {
          }
          if (!domIsType) break;
          annot = app(typeId(), dom);
        }
        Expr body = gen(ctx.extended(x, dom), open(head.child(1), x), budget - 1);
        if (body) return lam(x, annot, body);
        break;
      }
      case Apply: {
        if (budget <= 0) break;
        std::vector<const Context::Binding*> funs;
        for (const auto& b : ctx.bindings()) {
          if (b.type.is(Tag::Pi)) funs.push_back(&b);
        }
        std::shuffle(funs.begin(), funs.end(), rng_);
        for (std::size_t tries = 0; tries < funs.size() && tries < 4; ++tries) {
          Expr acc = var(funs[tries]->name);
          Expr cur = funs[tries]->type;
          for (int k = 0; k < 3; ++k) {
            Reduced cw = whnf(cur, 2000);
            if (!cw.term.is(Tag::Pi)) break;
            const Expr& dom = cw.term.child(0);
            Expr arg = isStar(dom) ? genType(ctx, budget - 1) : gen(ctx, dom, budget - 1);
            if (!arg) break;
            acc = app(acc, arg);
            cur = instantiate(cw.term.child(1), arg);
            if (same(cur, target)) return acc;
          }
        }
        break;
      }
      case Redex: {
        if (budget < 2) break;
        Expr a = genType(ctx, 1);
        if (!a) break;
        Expr arg = gen(ctx, a, budget - 2);
        if (!arg) break;
        std::string x = fresh("u");
        Expr body = gen(ctx.extended(x, a), target, budget - 1);
        if (body) return app(lam(x, a, body), arg);
        break;
      }
      case PolyId: {
        if (!targetIsType || budget <= 0) break;
        Expr t = gen(ctx, target, budget - 1);
        if (t) return apps(polyId(), {target, t});
        break;
      }
      case TypeForm: {
        if (!isStar(target)) break;
        Expr t = genType(ctx, budget);
        if (t) return t;
        break;
      }
    }
  }
  return {};
}

Expr TermGenerator::pickTarget(const Context& ctx) {
  static const char* const pool[] = {
      "Nat", "Bool", "Nat -> Nat", "List Nat", "Vec zero", "P zero", "(A:*) -> A -> A",
      "F Nat", "*", "* -> *", "Bool -> Nat -> Nat", "(A:*) -> List A", "(n:Nat) -> P n",
  };
  (void)ctx;
  return parseExpr(pool[std::uniform_int_distribution<std::size_t>(0, std::size(pool) - 1)(rng_)]);
}

std::optional<Judgement> TermGenerator::attempt(const Context& ctx, const Expr& target, int budget) {
  Expr t = gen(ctx, target, budget);
  if (!t || t.size() > maxSize_) return std::nullopt;
  try {
    checkType(cc(), ctx, t, target);
  } catch (const TypeError&) {
    return std::nullopt;
  }
  return Judgement{ctx, t, target};
}

Judgement TermGenerator::nextAny() {
  Context ctx = baseContext();
  for (;;) {
    int budget = std::uniform_int_distribution<int>(1, 4)(rng_);
    if (auto j = attempt(ctx, pickTarget(ctx), budget)) return *j;
  }
}

Judgement TermGenerator::next() {
  for (;;) {
    Judgement j = nextAny();
    if (!isNormal(j.term)) return j;
  }
}

SubstInstance TermGenerator::nextSubstInstance() {
  Context base = baseContext();
  for (;;) {
    bool kindBound = std::uniform_int_distribution<int>(0, 1)(rng_) == 0;
    SubstInstance inst;
    inst.ctx = base;
    Expr xType;
    const char* const* targets;
    std::size_t nTargets;
    static const char* const kindTargets[] = {"X -> X", "List X", "(A:*) -> X -> A", "*", "X",
                                              "Nat -> X", "F X -> F X", "* -> *"};
    static const char* const typeTargets[] = {"Nat", "P n", "Nat -> Nat", "Bool", "*", "Vec n", "P (succ n)"};
    if (kindBound) {
      inst.x = "X";
      xType = star();
      targets = kindTargets;
      nTargets = std::size(kindTargets);
    } else {
      inst.x = "n";
      xType = var("Nat");
      targets = typeTargets;
      nTargets = std::size(typeTargets);
    }
    inst.ctx.push(inst.x, xType);
    Expr target = parseExpr(targets[std::uniform_int_distribution<std::size_t>(0, nTargets - 1)(rng_)]);
    // Prefer instances where the substituted variable actually occurs.
    Expr a;
    for (int tries = 0; tries < 4; ++tries) {
      auto j = attempt(inst.ctx, target, std::uniform_int_distribution<int>(1, 3)(rng_));
      if (!j) continue;
      a = j->term;
      if (occursFree(a, inst.x)) break;
    }
    if (!a) continue;
    Expr b = kindBound ? genType(base, 2) : gen(base, xType, 2);
    if (!b || b.size() > maxSize_) continue;
    try {
      checkType(cc(), base, b, xType);
    } catch (const TypeError&) {
      continue;
    }
    inst.a = a;
    inst.b = b;
    return inst;
  }
}

}  // namespace pts
