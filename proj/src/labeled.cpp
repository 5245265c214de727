#include "pts/labeled.hpp"

#include "pts/parse.hpp"

namespace pts {

Expr llam(const std::string& x, Expr domain, const Expr& codomain, const Expr& body) {
  return Expr::make(Tag::LLam, x, {std::move(domain), abstract(codomain, x), abstract(body, x)});
}

Expr lapp(const std::string& x, Expr domain, const Expr& codomain, Expr fun, Expr arg) {
  return Expr::make(Tag::LApp, x,
                    {std::move(domain), abstract(codomain, x), std::move(fun), std::move(arg)});
}

bool hasLabels(const Expr& e) {
  if (e.is(Tag::LLam) || e.is(Tag::LApp)) return true;
  for (std::size_t i = 0; i < e.arity(); ++i) {
    if (hasLabels(e.child(i))) return true;
  }
  return false;
}

Expr erase(const Expr& la) {
  switch (la.tag()) {
    case Tag::Sort:
    case Tag::Free:
    case Tag::Bound:
      return la;
    case Tag::LLam:
      return Expr::make(Tag::Lam, la.name(), {erase(la.child(0)), erase(la.child(2))});
    case Tag::LApp:
      return Expr::make(Tag::App, "", {erase(la.child(2)), erase(la.child(3))});
    default: {
      std::vector<Expr> kids;
      for (std::size_t i = 0; i < la.arity(); ++i) kids.push_back(erase(la.child(i)));
      return withChildren(la, std::move(kids));
    }
  }
}

Context erase(const Context& lctx) {
  Context out;
  for (const auto& b : lctx.bindings()) out.push(b.name, erase(b.type));
  return out;
}

std::vector<Expr> tightStepAll(const Expr& la) { return stepAll(la); }

namespace {

class Labeler {
 public:
  Labeler(const PtsSpec& spec, std::size_t fuel) : spec_(spec), fuel_(fuel) {}

  Expr label(const Context& ctx, const Expr& e, std::size_t depth) {
    if (depth > kMaxLabelDepth) {
      throw TypeError(TypeErrorKind::FuelExhausted, {}, "label nesting exceeds " + std::to_string(kMaxLabelDepth));
    }
    switch (e.tag()) {
      case Tag::Sort:
      case Tag::Free:
        return e;
      case Tag::Pi: {
        std::string x = freshName(e.name(), ctx, {&e.child(1)});
        Context inner = ctx.extended(x, e.child(0));
        return Expr::make(Tag::Pi, e.name(),
                          {label(ctx, e.child(0), depth),
                           abstract(label(inner, open(e.child(1), x), depth), x)});
      }
      case Tag::Lam: {
        std::string x = freshName(e.name(), ctx, {&e.child(1)});
        Context inner = ctx.extended(x, e.child(0));
        Expr body = open(e.child(1), x);
        Expr cod = inferType(spec_, inner, body, fuel_);
        return Expr::make(Tag::LLam, e.name(),
                          {label(ctx, e.child(0), depth + 1),
                           abstract(label(inner, cod, depth + 1), x),
                           abstract(label(inner, body, depth), x)});
      }
      case Tag::App: {
        Expr ft = inferType(spec_, ctx, e.child(0), fuel_);
        Reduced w = whnf(ft, fuel_);
        if (w.exhausted) throw TypeError(TypeErrorKind::FuelExhausted, {}, "fuel exhausted reducing " + printExpr(ft));
        if (!w.term.is(Tag::Pi)) {
          throw TypeError(TypeErrorKind::NotAFunction, {}, printExpr(e.child(0)) + " is not a function");
        }
        const Expr& pi = w.term;
        std::string x = freshName(pi.name(), ctx, {&pi.child(1)});
        Context inner = ctx.extended(x, pi.child(0));
        return Expr::make(Tag::LApp, pi.name(),
                          {label(ctx, pi.child(0), depth + 1),
                           abstract(label(inner, open(pi.child(1), x), depth + 1), x),
                           label(ctx, e.child(0), depth), label(ctx, e.child(1), depth)});
      }
      default:
        throw TypeError(TypeErrorKind::SigmaDisabled, {}, "the labeled system has no Sigma forms: " + printExpr(e));
    }
  }

 private:
  const PtsSpec& spec_;
  std::size_t fuel_;
};

bool isSortExpr(const Expr& e) { return e.is(Tag::Sort); }

class LabeledChecker {
 public:
  LabeledChecker(const PtsSpec& spec, std::size_t fuel) : spec_(spec), fuel_(fuel) {}

  Expr infer(const Context& ctx, const Expr& e) {
    switch (e.tag()) {
      case Tag::Sort: {
        Sort s{e.name()};
        if (!spec_.hasSort(s)) fail(TypeErrorKind::SortUntypeable, "'" + printExpr(e) + "' is not a sort");
        auto t = spec_.axiomFor(s);
        if (!t) fail(TypeErrorKind::NoAxiom, "no axiom for sort " + printExpr(e));
        return sort(*t);
      }
      case Tag::Free: {
        const auto* b = ctx.find(e.name());
        if (b == nullptr) fail(TypeErrorKind::UnboundVariable, "unbound variable " + e.name());
        return b->type;
      }
      case Tag::Pi:
        return sort(piSort(ctx, e.name(), e.child(0), e.child(1)));
      case Tag::LLam: {
        piSort(ctx, e.name(), e.child(0), e.child(1));
        std::string x = freshName(e.name(), ctx, {&e.child(1), &e.child(2)});
        Context inner = ctx.extended(x, e.child(0));
        Expr bt = infer(inner, open(e.child(2), x));
        require(bt, open(e.child(1), x), "lambda body");
        return Expr::make(Tag::Pi, e.name(), {e.child(0), e.child(1)});
      }
      case Tag::LApp: {
        Expr label = Expr::make(Tag::Pi, e.name(), {e.child(0), e.child(1)});
        piSort(ctx, e.name(), e.child(0), e.child(1));
        Expr ft = infer(ctx, e.child(2));
        Reduced nf = normalize(erase(ft), fuel_);
        Reduced nl = normalize(erase(label), fuel_);
        if (nf.exhausted || nl.exhausted || !alphaEq(nf.term, nl.term)) {
          warnings_.push_back("application label " + printExpr(label) + " differs from function type " +
                              printExpr(ft));
        }
        Expr at = infer(ctx, e.child(3));
        require(at, e.child(0), "argument " + printExpr(e.child(3)));
        return instantiate(e.child(1), e.child(3));
      }
      default:
        fail(TypeErrorKind::Mismatch, "not a labeled expression: " + printExpr(e));
    }
  }

  std::vector<std::string> takeWarnings() { return std::move(warnings_); }

 private:
  Sort piSort(const Context& ctx, const std::string& hint, const Expr& dom, const Expr& cod) {
    Sort s1 = sortOf(ctx, dom);
    std::string x = freshName(hint, ctx, {&cod});
    Sort s2 = sortOf(ctx.extended(x, dom), open(cod, x));
    auto s3 = spec_.ruleFor(s1, s2);
    if (!s3) fail(TypeErrorKind::NoRule, "no rule (" + s1.name + ", " + s2.name + ", _)");
    return *s3;
  }

  Sort sortOf(const Context& ctx, const Expr& e) {
    Expr t = infer(ctx, e);
    if (isSortExpr(t)) return Sort{t.name()};
    Reduced r = normalize(t, fuel_);
    if (r.exhausted) fail(TypeErrorKind::FuelExhausted, "fuel exhausted reducing " + printExpr(t));
    if (!isSortExpr(r.term)) fail(TypeErrorKind::SortUntypeable, printExpr(e) + " has type " + printExpr(t) + ", not a sort");
    return Sort{r.term.name()};
  }

  void require(const Expr& actual, const Expr& expected, const std::string& what) {
    switch (directedConvertible(actual, expected, fuel_)) {
      case Conv::Equal:
        return;
      case Conv::Distinct:
        fail(TypeErrorKind::Mismatch, what + " has type " + printExpr(actual) + ", which is not reducible to or from " + printExpr(expected));
      case Conv::Undetermined:
        fail(TypeErrorKind::DirectedConversionUndetermined,
             "no reduction between " + printExpr(actual) + " and " + printExpr(expected) + " found within budget");
    }
  }

  [[noreturn]] void fail(TypeErrorKind k, const std::string& detail) { throw TypeError(k, {}, detail); }

  const PtsSpec& spec_;
  std::size_t fuel_;
  std::vector<std::string> warnings_;
};

void collectMismatches(const Expr& e, Path& path, std::size_t fuel, std::vector<std::string>& out) {
  if (e.is(Tag::LApp) && e.child(2).is(Tag::LLam)) {
    const Expr& lam = e.child(2);
    for (std::uint8_t i = 0; i < 2; ++i) {
      Reduced a = normalize(erase(e.child(i)), fuel);
      Reduced b = normalize(erase(lam.child(i)), fuel);
      if (a.exhausted || b.exhausted || !alphaEq(a.term, b.term)) {
        out.push_back("at " + renderPath(path) + ": application label " + printExpr(e) +
                      " does not match the lambda's");
        break;
      }
    }
  }
  for (std::size_t i = 0; i < e.arity(); ++i) {
    path.push_back(static_cast<std::uint8_t>(i));
    collectMismatches(e.child(i), path, fuel, out);
    path.pop_back();
  }
}

}  // namespace

Expr labelTerm(const PtsSpec& spec, const Context& ctx, const Expr& a, std::size_t fuel) {
  inferType(spec, ctx, a, fuel);
  Labeler l(spec, fuel);
  return l.label(ctx, a, 0);
}

Context labelContext(const PtsSpec& spec, const Context& ctx, std::size_t fuel) {
  Labeler l(spec, fuel);
  Context out;
  Context plain;
  for (const auto& b : ctx.bindings()) {
    out.push(b.name, l.label(plain, b.type, 0));
    plain.push(b.name, b.type);
  }
  return out;
}

Conv directedConvertible(const Expr& a, const Expr& b, std::size_t fuel) {
  if (alphaEq(a, b)) return Conv::Equal;
  Reduced na = normalize(a, fuel);
  if (!na.exhausted && alphaEq(na.term, b)) return Conv::Equal;
  Reduced nb = normalize(b, fuel);
  if (!nb.exhausted && alphaEq(nb.term, a)) return Conv::Equal;
  SearchLimits lim{fuel, fuel};
  SearchOutcome fwd = search(a, b, lim);
  if (fwd.result == SearchResult::Found) return Conv::Equal;
  SearchOutcome bwd = search(b, a, lim);
  if (bwd.result == SearchResult::Found) return Conv::Equal;
  if (fwd.result == SearchResult::Truncated || bwd.result == SearchResult::Truncated) {
    return Conv::Undetermined;
  }
  return Conv::Distinct;
}

LabeledTyping labeledInfer(const PtsSpec& spec, const Context& lctx, const Expr& la,
                           std::size_t fuel) {
  LabeledChecker c(spec, fuel);
  Expr t = c.infer(lctx, la);
  return LabeledTyping{t, c.takeWarnings()};
}

std::vector<std::string> labelMismatches(const Expr& la, std::size_t fuel) {
  std::vector<std::string> out;
  Path p;
  collectMismatches(la, p, fuel, out);
  return out;
}

}  // namespace pts
