#include "pts/typing.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "pts/parse.hpp"

namespace pts {

namespace {

Sort starSort() { return Sort::star(); }
Sort boxSort() { return Sort::box(); }

PtsSpec baseSpec(std::string name) {
  PtsSpec s;
  s.name = std::move(name);
  s.sorts = {starSort(), boxSort()};
  s.axioms = {{starSort(), boxSort()}};
  s.rules = {{starSort(), starSort(), starSort()}};
  return s;
}

}  // namespace

PtsSpec PtsSpec::stlc() { return baseSpec("stlc"); }

PtsSpec PtsSpec::systemF() {
  PtsSpec s = baseSpec("f");
  s.rules.insert({boxSort(), starSort(), starSort()});
  return s;
}

PtsSpec PtsSpec::fomega() {
  PtsSpec s = systemF();
  s.name = "fomega";
  s.rules.insert({boxSort(), boxSort(), boxSort()});
  return s;
}

PtsSpec PtsSpec::cc() {
  PtsSpec s = fomega();
  s.name = "cc";
  s.rules.insert({starSort(), boxSort(), boxSort()});
  return s;
}

std::optional<Sort> PtsSpec::axiomFor(const Sort& s) const {
  for (const auto& [a, b] : axioms) {
    if (a == s) return b;
  }
  return std::nullopt;
}

std::optional<Sort> PtsSpec::ruleFor(const Sort& s1, const Sort& s2) const {
  for (const auto& [a, b, c] : rules) {
    if (a == s1 && b == s2) return c;
  }
  return std::nullopt;
}

void PtsSpec::validate() const {
  auto need = [&](const Sort& s) {
    if (!hasSort(s)) throw std::invalid_argument("spec mentions undeclared sort '" + s.name + "'");
  };
  std::set<Sort> seenAxiom;
  for (const auto& [a, b] : axioms) {
    need(a);
    need(b);
    if (!seenAxiom.insert(a).second) {
      throw std::invalid_argument("spec is not functional: several axioms for '" + a.name + "'");
    }
  }
  std::set<std::pair<Sort, Sort>> seenRule;
  for (const auto& [a, b, c] : rules) {
    need(a);
    need(b);
    need(c);
    if (!seenRule.insert({a, b}).second) {
      throw std::invalid_argument("spec is not functional: several rules for (" + a.name + ", " +
                                  b.name + ")");
    }
  }
}

std::optional<PtsSpec> builtinSpec(std::string_view name) {
  if (name == "stlc") return PtsSpec::stlc();
  if (name == "f") return PtsSpec::systemF();
  if (name == "fomega") return PtsSpec::fomega();
  if (name == "cc") return PtsSpec::cc();
  return std::nullopt;
}

PtsSpec parseSpec(std::string_view text, std::string name) {
  PtsSpec spec;
  spec.name = std::move(name);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineNo = 0;
  auto sortOf = [](std::string tok) {
    if (!tok.empty() && tok.front() == '%') tok.erase(0, 1);
    return Sort{tok};
  };
  while (std::getline(in, line)) {
    ++lineNo;
    std::istringstream words(line);
    std::vector<std::string> toks;
    for (std::string w; words >> w;) toks.push_back(w);
    if (toks.empty() || toks.front().front() == '#') continue;
    const std::string& kw = toks.front();
    std::size_t want = kw == "sort" ? 1 : kw == "axiom" ? 2 : kw == "rule" ? 3 : 0;
    auto where = "spec line " + std::to_string(lineNo) + ": ";
    if (want == 0) throw std::invalid_argument(where + "unknown directive '" + kw + "'");
    if (toks.size() < want + 1) throw std::invalid_argument(where + "too few arguments");
    if (toks.size() > want + 1 && toks[want + 1].front() != '#') {
      throw std::invalid_argument(where + "unexpected '" + toks[want + 1] + "'");
    }
    if (kw == "sort") {
      spec.sorts.insert(sortOf(toks[1]));
    } else if (kw == "axiom") {
      spec.axioms.insert({sortOf(toks[1]), sortOf(toks[2])});
    } else {
      spec.rules.insert({sortOf(toks[1]), sortOf(toks[2]), sortOf(toks[3])});
    }
  }
  spec.validate();
  return spec;
}

PtsSpec loadSpec(const std::string& nameOrPath) {
  if (auto b = builtinSpec(nameOrPath)) return *b;
  std::ifstream f(nameOrPath);
  if (!f) throw std::invalid_argument("unknown system '" + nameOrPath + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  return parseSpec(buf.str(), nameOrPath);
}

const char* typeErrorKindName(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::UnboundVariable: return "UnboundVariable";
    case TypeErrorKind::NoAxiom: return "NoAxiom";
    case TypeErrorKind::NoRule: return "NoRule";
    case TypeErrorKind::NotAFunction: return "NotAFunction";
    case TypeErrorKind::Mismatch: return "Mismatch";
    case TypeErrorKind::IllFormedContext: return "IllFormedContext";
    case TypeErrorKind::SortUntypeable: return "SortUntypeable";
    case TypeErrorKind::FuelExhausted: return "FuelExhausted";
    case TypeErrorKind::SigmaDisabled: return "SigmaDisabled";
    case TypeErrorKind::DirectedConversionUndetermined: return "DirectedConversionUndetermined";
  }
  return "?";
}

std::optional<TypeErrorKind> parseTypeErrorKind(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(TypeErrorKind::DirectedConversionUndetermined); ++i) {
    auto k = static_cast<TypeErrorKind>(i);
    if (s == typeErrorKindName(k)) return k;
  }
  return std::nullopt;
}

TypeError::TypeError(TypeErrorKind kind, Path location, std::string detail)
    : std::runtime_error(std::string(typeErrorKindName(kind)) + " at " + renderPath(location) +
                         ": " + detail),
      kind_(kind),
      location_(std::move(location)),
      detail_(std::move(detail)) {}

namespace {

class Checker {
 public:
  Checker(const PtsSpec& spec, std::size_t fuel) : spec_(spec), fuel_(fuel) {}

  template <class F>
  auto at(std::uint8_t child, F&& f) {
    path_.push_back(child);
    auto r = f();
    path_.pop_back();
    return r;
  }

  Expr infer(const Context& ctx, const Expr& e) {
    switch (e.tag()) {
      case Tag::Sort: {
        Sort s{e.name()};
        if (!spec_.hasSort(s)) fail(TypeErrorKind::SortUntypeable, "'" + printExpr(e) + "' is not a sort of " + spec_.name);
        auto t = spec_.axiomFor(s);
        if (!t) fail(TypeErrorKind::NoAxiom, "no axiom for sort " + printExpr(e));
        return sort(*t);
      }
      case Tag::Free: {
        const auto* b = ctx.find(e.name());
        if (b == nullptr) fail(TypeErrorKind::UnboundVariable, "unbound variable " + e.name());
        return b->type;
      }
      case Tag::Bound:
        fail(TypeErrorKind::UnboundVariable, "loose bound variable");
      case Tag::Pi: {
        Sort s1 = at(0, [&] { return inferSort(ctx, e.child(0)); });
        std::string x = freshName(e.name(), ctx, {&e.child(1)});
        Context inner = ctx.extended(x, e.child(0));
        Sort s2 = at(1, [&] { return inferSort(inner, open(e.child(1), x)); });
        auto s3 = spec_.ruleFor(s1, s2);
        if (!s3) fail(TypeErrorKind::NoRule, "no rule (" + s1.name + ", " + s2.name + ", _) for " + printExpr(e));
        return sort(*s3);
      }
      case Tag::Lam: {
        Sort s1 = at(0, [&] { return inferSort(ctx, e.child(0)); });
        std::string x = freshName(e.name(), ctx, {&e.child(1)});
        Context inner = ctx.extended(x, e.child(0));
        Expr body = open(e.child(1), x);
        Expr bt = at(1, [&] { return infer(inner, body); });
        Sort s2 = at(1, [&] { return inferSort(inner, bt); });
        if (!spec_.ruleFor(s1, s2)) {
          fail(TypeErrorKind::NoRule, "no rule (" + s1.name + ", " + s2.name + ", _) for the type of " + printExpr(e));
        }
        return Expr::make(Tag::Pi, e.name(), {e.child(0), abstract(bt, x)});
      }
      case Tag::App: {
        Expr ft = at(0, [&] { return infer(ctx, e.child(0)); });
        Expr w = head(ft);
        if (!w.is(Tag::Pi)) {
          at(0, [&]() -> int { fail(TypeErrorKind::NotAFunction, printExpr(e.child(0)) + " has type " + printExpr(ft) + ", not a function type"); });
        }
        Expr at1 = at(1, [&] { return infer(ctx, e.child(1)); });
        at(1, [&] {
          convertible(at1, w.child(0), "argument " + printExpr(e.child(1)));
          return 0;
        });
        return instantiate(w.child(1), e.child(1));
      }
      case Tag::Sigma: {
        needSigma(e);
        Sort s1 = at(0, [&] { return inferSort(ctx, e.child(0)); });
        if (s1 != starSort()) {
          at(0, [&]() -> int { fail(TypeErrorKind::Mismatch, "first component of a Sigma-type must have type *, found " + s1.name); });
        }
        std::string x = freshName(e.name(), ctx, {&e.child(1)});
        Context inner = ctx.extended(x, e.child(0));
        Sort s2 = at(1, [&] { return inferSort(inner, open(e.child(1), x)); });
        return sort(s2);
      }
      case Tag::Pair: {
        needSigma(e);
        const Expr& annot = e.child(2);
        at(2, [&] { return inferSort(ctx, annot); });
        Expr w = head(annot);
        if (!w.is(Tag::Sigma)) {
          at(2, [&]() -> int { fail(TypeErrorKind::Mismatch, "pair annotation " + printExpr(annot) + " is not a Sigma-type"); });
        }
        Expr t0 = at(0, [&] { return infer(ctx, e.child(0)); });
        at(0, [&] {
          convertible(t0, w.child(0), "first component " + printExpr(e.child(0)));
          return 0;
        });
        Expr t1 = at(1, [&] { return infer(ctx, e.child(1)); });
        at(1, [&] {
          convertible(t1, instantiate(w.child(1), e.child(0)), "second component " + printExpr(e.child(1)));
          return 0;
        });
        return annot;
      }
      case Tag::Proj1:
      case Tag::Proj2: {
        needSigma(e);
        Expr pt = at(0, [&] { return infer(ctx, e.child(0)); });
        Expr w = head(pt);
        if (!w.is(Tag::Sigma)) {
          at(0, [&]() -> int { fail(TypeErrorKind::Mismatch, printExpr(e.child(0)) + " has type " + printExpr(pt) + ", not a Sigma-type"); });
        }
        if (e.is(Tag::Proj1)) return w.child(0);
        return instantiate(w.child(1), proj1(e.child(0)));
      }
      case Tag::LLam:
      case Tag::LApp:
        fail(TypeErrorKind::Mismatch, "labeled form in a plain judgement");
    }
    fail(TypeErrorKind::Mismatch, "unknown expression");
  }

  Sort inferSort(const Context& ctx, const Expr& e) {
    Expr t = infer(ctx, e);
    Expr w = head(t);
    if (!w.is(Tag::Sort)) {
      fail(TypeErrorKind::SortUntypeable, printExpr(e) + " has type " + printExpr(t) + ", not a sort");
    }
    return Sort{w.name()};
  }

  void check(const Context& ctx, const Expr& e, const Expr& type) {
    bool classifier = type.is(Tag::Sort) && spec_.isTopSort(Sort{type.name()});
    if (!classifier) inferSort(ctx, type);
    Expr t = infer(ctx, e);
    convertible(t, type, printExpr(e));
  }

  Expr head(const Expr& t) {
    Reduced r = whnf(t, fuel_);
    if (r.exhausted) fail(TypeErrorKind::FuelExhausted, "fuel exhausted reducing " + printExpr(t));
    return r.term;
  }

  void convertible(const Expr& actual, const Expr& expected, const std::string& what) {
    switch (betaEq(actual, expected, fuel_)) {
      case Conv::Equal:
        return;
      case Conv::Distinct:
        fail(TypeErrorKind::Mismatch, what + " has type " + printExpr(actual) + " but " +
                                          printExpr(expected) + " was expected");
      case Conv::Undetermined:
        fail(TypeErrorKind::FuelExhausted, "fuel exhausted comparing " + printExpr(actual) +
                                               " with " + printExpr(expected));
    }
  }

  [[noreturn]] void fail(TypeErrorKind k, const std::string& detail) {
    throw TypeError(k, path_, detail);
  }

 private:
  void needSigma(const Expr& e) {
    if (!spec_.sigma) fail(TypeErrorKind::SigmaDisabled, "Sigma form " + printExpr(e) + " needs the Sigma extension");
  }

  const PtsSpec& spec_;
  std::size_t fuel_;
  Path path_;
};

}  // namespace

void wfContext(const PtsSpec& spec, const Context& ctx, std::size_t fuel) {
  Context prefix;
  for (const auto& b : ctx.bindings()) {
    if (b.name.empty() || prefix.contains(b.name)) {
      throw TypeError(TypeErrorKind::IllFormedContext, {}, "duplicate binding for '" + b.name + "'");
    }
    try {
      Checker c(spec, fuel);
      c.inferSort(prefix, b.type);
    } catch (const TypeError& err) {
      throw TypeError(TypeErrorKind::IllFormedContext, err.location(),
                      "binding " + b.name + " : " + printExpr(b.type) + ": " +
                          typeErrorKindName(err.kind()) + ": " + err.detail());
    }
    prefix.push(b.name, b.type);
  }
}

Expr inferType(const PtsSpec& spec, const Context& ctx, const Expr& a, std::size_t fuel) {
  Checker c(spec, fuel);
  return c.infer(ctx, a);
}

void checkType(const PtsSpec& spec, const Context& ctx, const Expr& a, const Expr& type,
               std::size_t fuel) {
  Checker c(spec, fuel);
  c.check(ctx, a, type);
}

bool isKindShaped(const Expr& e) {
  if (e.is(Tag::Sort)) return e.name() == "*";
  if (e.is(Tag::Pi)) return isKindShaped(e.child(1));
  return false;
}

std::string Classification::name() const {
  switch (tag) {
    case Tag::Kind: return "kind";
    case Tag::GammaConstructor: return isType ? "type" : "constructor";
    case Tag::GammaTerm: return "term";
  }
  return "?";
}

Classification classify(const PtsSpec& spec, const Context& ctx, const Expr& a,
                        std::size_t fuel) {
  auto nf = [&](const Expr& t) {
    Reduced r = normalize(t, fuel);
    if (r.exhausted) throw TypeError(TypeErrorKind::FuelExhausted, {}, "fuel exhausted normalizing " + printExpr(t));
    return r.term;
  };
  auto isSort = [](const Expr& t, const Sort& s) { return t.is(Tag::Sort) && t.name() == s.name; };
  Expr b = nf(inferType(spec, ctx, a, fuel));
  if (isSort(b, boxSort())) return {Classification::Tag::Kind, false};
  Expr k = nf(inferType(spec, ctx, b, fuel));
  if (isSort(k, boxSort())) return {Classification::Tag::GammaConstructor, isSort(b, starSort())};
  if (isSort(k, starSort())) return {Classification::Tag::GammaTerm, false};
  throw TypeError(TypeErrorKind::SortUntypeable, {},
                  "cannot classify " + printExpr(a) + ": its type's type is " + printExpr(k));
}

}  // namespace pts
