#include "pts/translation.hpp"

#include <map>
#include <set>

#include "pts/parse.hpp"
#include "pts/typing.hpp"

namespace pts {

std::string witnessName(const std::string& x) { return "_w$" + x; }

namespace {

const PtsSpec& ccSpec() {
  static const PtsSpec s = PtsSpec::cc();
  return s;
}

const PtsSpec& fomegaSpec() {
  static const PtsSpec s = PtsSpec::fomega();
  return s;
}

Expr zero() { return var(kZeroName); }

void rejectReserved(const Expr& e) {
  if (mentionsReservedName(e)) {
    throw TranslationError("input mentions a reserved name: " + printExpr(e), e);
  }
}

void rejectReserved(const Context& ctx) {
  for (const auto& b : ctx.bindings()) {
    if (isReservedName(b.name)) {
      throw TranslationError("context binds a reserved name: " + b.name, var(b.name));
    }
    rejectReserved(b.type);
  }
}

class Scope {
 public:
  Scope(TransEnv& env, const std::string& x, const Expr& type)
      : env_(env), saved_(env.ccContext.size()) {
    env_.ccContext.push(x, type);
  }
  ~Scope() { env_.ccContext = env_.ccContext.prefix(saved_); }
  Scope(const Scope&) = delete;
  Scope& operator=(const Scope&) = delete;

 private:
  TransEnv& env_;
  std::size_t saved_;
};

Classification classifyIn(TransEnv& env, const Expr& e) {
  try {
    return classify(ccSpec(), env.ccContext, e, env.fuel);
  } catch (const TypeError& err) {
    throw TranslationError("cannot classify " + printExpr(e) + ": " + err.what(), e);
  }
}

bool isSortNamed(const Expr& e, const char* name) { return e.is(Tag::Sort) && e.name() == name; }

std::string openName(TransEnv& env, const Expr& binder) {
  return freshName(binder.name(), env.ccContext, {&binder.child(binder.arity() - 1)});
}

Expr tt(TransEnv& env, const Expr& a);

Expr tr(TransEnv& env, const Expr& a);

Expr tt(TransEnv& env, const Expr& a) {
  switch (a.tag()) {
    case Tag::Sort:
      if (isSortNamed(a, "*") || isSortNamed(a, "#")) return zero();
      break;
    case Tag::Free:
      return a;
    case Tag::Pi: {
      const Expr& dom = a.child(0);
      std::string x = openName(env, a);
      Expr cod;
      {
        Scope s(env, x, dom);
        cod = tt(env, open(a.child(1), x));
      }
      if (isKindShaped(dom)) {
        return Expr::make(Tag::Pi, x, {vKind(dom), abstract(arrow(tt(env, dom), cod), x)});
      }
      return Expr::make(Tag::Pi, x, {tt(env, dom), abstract(cod, x)});
    }
    case Tag::Lam: {
      const Expr& dom = a.child(0);
      std::string x = openName(env, a);
      Expr body;
      {
        Scope s(env, x, dom);
        body = tt(env, open(a.child(1), x));
      }
      if (isKindShaped(dom)) return Expr::make(Tag::Lam, x, {vKind(dom), abstract(body, x)});
      if (occursFree(body, x)) {
        throw TranslationError("term variable " + x + " survives type translation", a);
      }
      return body;
    }
    case Tag::App: {
      Classification c = classifyIn(env, a.child(1));
      Expr f = tt(env, a.child(0));
      if (c.isConstructor()) return app(f, tt(env, a.child(1)));
      if (c.isTerm()) return f;
      break;
    }
    default:
      break;
  }
  throw TranslationError("outside the domain of the type translation: " + printExpr(a), a);
}

Expr tr(TransEnv& env, const Expr& a) {
  switch (a.tag()) {
    case Tag::Sort:
      if (isSortNamed(a, "*")) return canonical(env, zero());
      break;
    case Tag::Free: {
      const auto* b = env.ccContext.find(a.name());
      if (b == nullptr) throw TranslationError("unbound variable " + a.name(), a);
      if (isKindShaped(b->type)) return var(witnessName(a.name()));
      return a;
    }
    case Tag::Pi: {
      const Expr& dom = a.child(0);
      std::string x = openName(env, a);
      Expr cod;
      {
        Scope s(env, x, dom);
        cod = tr(env, open(a.child(1), x));
      }
      Expr domType = tt(env, dom);
      if (isKindShaped(dom)) {
        cod = subst(cod, x, canonical(env, vKind(dom)));
        cod = subst(cod, witnessName(x), canonical(env, domType));
      } else {
        cod = subst(cod, x, canonical(env, domType));
      }
      Expr c = canonical(env, arrow(zero(), arrow(zero(), zero())));
      return apps(c, {tr(env, dom), cod});
    }
    case Tag::Lam: {
      const Expr& dom = a.child(0);
      std::string x = openName(env, a);
      std::string y = "_y" + std::to_string(++env.freshCounter);
      Expr body;
      {
        Scope s(env, x, dom);
        body = tr(env, open(a.child(1), x));
      }
      Expr domType = tt(env, dom);
      Expr inner;
      if (isKindShaped(dom)) {
        std::string w = witnessName(x);
        inner = lam(x, vKind(dom), lam(w, domType, body));
      } else {
        inner = lam(x, domType, body);
      }
      return app(lam(y, zero(), inner), tr(env, dom));
    }
    case Tag::App: {
      Classification c = classifyIn(env, a.child(1));
      Expr f = tr(env, a.child(0));
      if (c.isConstructor()) return apps(f, {tt(env, a.child(1)), tr(env, a.child(1))});
      if (c.isTerm()) return app(f, tr(env, a.child(1)));
      break;
    }
    default:
      break;
  }
  throw TranslationError("outside the domain of the term translation: " + printExpr(a), a);
}

}  // namespace

Expr vKind(const Expr& kind) {
  if (isSortNamed(kind, "*") || isSortNamed(kind, "#")) return star();
  if (kind.is(Tag::Pi) && isKindShaped(kind)) {
    Expr rest = vKind(kind.child(1));
    if (isKindShaped(kind.child(0))) return arrow(vKind(kind.child(0)), rest);
    return rest;
  }
  throw TranslationError("not a kind: " + printExpr(kind), kind);
}

Expr canonical(const Expr& type) {
  if (isSortNamed(type, "*")) return zero();
  if (type.is(Tag::Pi) && isKindShaped(type)) {
    return Expr::make(Tag::Lam, type.name(), {type.child(0), canonical(type.child(1))});
  }
  return app(var(kZName), type);
}

Expr transType(TransEnv& env, const Expr& a) {
  rejectReserved(env.ccContext);
  rejectReserved(a);
  return tt(env, a);
}

Expr transTerm(TransEnv& env, const Expr& a) {
  rejectReserved(env.ccContext);
  rejectReserved(a);
  return tr(env, a);
}

Context transCtx(const Context& ctx, std::size_t fuel) {
  rejectReserved(ctx);
  Context out;
  out.push(kZeroName, star());
  out.push(kZName, pi("x", star(), var("x")));
  TransEnv env(Context{}, fuel);
  for (const auto& b : ctx.bindings()) {
    Expr t = tt(env, b.type);
    if (isKindShaped(b.type)) {
      out.push(b.name, vKind(b.type));
      out.push(witnessName(b.name), t);
    } else {
      out.push(b.name, t);
    }
    env.ccContext.push(b.name, b.type);
  }
  return out;
}

std::string renderJudgement(const Context& ctx, const Expr& a, const Expr& type) {
  std::string out;
  for (const auto& b : ctx.bindings()) {
    if (!out.empty()) out += ", ";
    out += b.name + " : " + printExpr(b.type);
  }
  out += out.empty() ? "|- " : " |- ";
  out += printExpr(a) + " : " + printExpr(type);
  return out;
}

namespace {

// Runs `f`, turning kernel exceptions into a failed report line.
template <class F>
bool guarded(Report& r, const std::string& check, F&& f) {
  try {
    f();
    return true;
  } catch (const TypeError& e) {
    r.fail(check, e.what());
  } catch (const TranslationError& e) {
    r.fail(check, e.what());
  } catch (const std::exception& e) {
    r.fail(check, e.what());
  }
  return false;
}

void checkIn(Report& r, const std::string& check, const Context& fctx, const Expr& term,
             const Expr& type, std::size_t fuel) {
  std::string j = renderJudgement(fctx, term, type);
  try {
    checkType(fomegaSpec(), fctx, term, type, fuel);
    r.pass(check, j);
  } catch (const TypeError& e) {
    r.fail(check, j + " -- " + e.what());
  }
}

}  // namespace

Report checkTranslation(const Context& ctx, const Expr& a, std::size_t fuel) {
  Report r;
  guarded(r, "translation", [&] {
    wfContext(ccSpec(), ctx, fuel);
    Expr type = inferType(ccSpec(), ctx, a, fuel);
    Context fctx = transCtx(ctx, fuel);
    try {
      wfContext(fomegaSpec(), fctx, fuel);
      r.pass("context", renderJudgement(ctx, a, type));
    } catch (const TypeError& e) {
      r.fail("context", e.what());
      return;
    }
    TransEnv env(ctx, fuel);
    env.logCanonical = true;
    Expr ta = transTerm(env, a);
    Expr tA = transType(env, type);
    checkIn(r, "term", fctx, ta, tA, fuel);

    Classification c = classify(ccSpec(), ctx, a, fuel);
    if (!c.isTerm()) {
      Expr typeOfType = c.isKind() ? box() : normalize(type, fuel).term;
      Expr t = transType(env, a);
      checkIn(r, "type", fctx, t, vKind(typeOfType), fuel);
    }

    std::size_t bad = 0;
    std::set<std::string> seen;
    for (const auto& use : env.canonicalLog) {
      Context uctx = transCtx(use.ccContext, fuel);
      Expr c = canonical(use.type);
      std::string j = renderJudgement(uctx, c, use.type);
      if (!seen.insert(j).second) continue;
      try {
        checkType(fomegaSpec(), uctx, c, use.type, fuel);
      } catch (const TypeError& e) {
        ++bad;
        r.fail("canonical", j + " -- " + e.what());
      }
    }
    if (bad == 0) {
      r.pass("canonical", std::to_string(env.canonicalLog.size()) + " inhabitants checked");
    }
  });
  return r;
}

Report checkReductionPreservation(const Context& ctx, const Expr& a, std::size_t maxDepth,
                                  std::size_t fuel) {
  Report r;
  guarded(r, "simulation", [&] {
    TransEnv env(ctx, fuel);
    Expr ta = transTerm(env, a);
    auto reducts = stepAll(a);
    if (reducts.empty()) {
      r.pass("simulation", printExpr(a) + " is normal");
      return;
    }
    for (const Expr& next : reducts) {
      TransEnv env2(ctx, fuel);
      Expr tb = transTerm(env2, next);
      SearchLimits lim{maxDepth, 20000};
      SearchOutcome o = search(ta, tb, lim, true);
      if (o.result == SearchResult::Truncated) {
        lim.maxStates = 200000;
        o = guidedSearch(ta, tb, lim, true);
      }
      std::string j = printExpr(a) + " ~> " + printExpr(next);
      if (o.result == SearchResult::Found) {
        r.pass("simulation", j + " (" + std::to_string(o.depth) + " target steps)");
      } else {
        r.fail("simulation", j + (o.result == SearchResult::Truncated ? " (search truncated)" : " (not reachable)"));
      }
    }
  });
  return r;
}

Report checkSubstLemmas(const Context& ctx, const Expr& a, const std::string& x, const Expr& b,
                        std::size_t fuel) {
  Report r;
  guarded(r, "subst", [&] {
    std::size_t pos = ctx.size();
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (ctx.bindings()[i].name == x) pos = i;
    }
    if (pos == ctx.size()) {
      r.fail("subst-precondition", x + " is not bound in the context");
      return;
    }
    Context before = ctx.prefix(pos);
    const Expr xType = ctx.bindings()[pos].type;
    checkType(ccSpec(), before, b, xType, fuel);
    Context after = before;
    for (std::size_t i = pos + 1; i < ctx.size(); ++i) {
      const auto& bd = ctx.bindings()[i];
      after.push(bd.name, subst(bd.type, x, b));
    }
    Expr type = inferType(ccSpec(), ctx, a, fuel);
    bool kindBound = isKindShaped(xType);

    TransEnv envB(before, fuel);
    Expr ttB = kindBound ? transType(envB, b) : Expr{};
    Expr trB = transTerm(envB, b);

    auto typeLemma = [&](const Expr& subject, const char* check) {
      TransEnv lhsEnv(after, fuel);
      Expr lhs = transType(lhsEnv, subst(subject, x, b));
      TransEnv rhsEnv(ctx, fuel);
      Expr rhs = transType(rhsEnv, subject);
      if (kindBound) rhs = subst(rhs, x, ttB);
      r.add(alphaEq(lhs, rhs), check,
            printExpr(subject) + " [" + printExpr(b) + "/" + x + "]: " + printExpr(lhs) +
                (alphaEq(lhs, rhs) ? " == " : " != ") + printExpr(rhs));
    };

    Classification c = classify(ccSpec(), ctx, a, fuel);
    if (!c.isTerm()) typeLemma(a, "subst-type");
    if (!isSortNamed(type, "#")) typeLemma(type, "subst-type");

    TransEnv lhsEnv(after, fuel);
    Expr lhs = transTerm(lhsEnv, subst(a, x, b));
    TransEnv rhsEnv(ctx, fuel);
    Expr rhs = transTerm(rhsEnv, a);
    if (kindBound) {
      rhs = substMany(rhs, {{x, ttB}, {witnessName(x), trB}});
    } else {
      rhs = subst(rhs, x, trB);
    }
    r.add(alphaEq(lhs, rhs), "subst-term",
          printExpr(a) + " [" + printExpr(b) + "/" + x + "]: " + printExpr(lhs) +
              (alphaEq(lhs, rhs) ? " == " : " != ") + printExpr(rhs));
  });
  return r;
}

}  // namespace pts
