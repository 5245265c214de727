#include "pts/syntax.hpp"

#include <algorithm>
#include <stdexcept>

namespace pts {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::uint64_t nameBit(std::string_view name) {
  return std::uint64_t{1} << (std::hash<std::string_view>{}(name) & 63U);
}

}  // namespace

bool bindsChild(Tag tag, std::size_t i) {
  switch (tag) {
    case Tag::Pi:
    case Tag::Lam:
    case Tag::Sigma:
    case Tag::LApp:
      return i == 1;
    case Tag::LLam:
      return i == 1 || i == 2;
    default:
      return false;
  }
}

std::size_t arityOf(Tag tag) {
  switch (tag) {
    case Tag::Sort:
    case Tag::Free:
    case Tag::Bound:
      return 0;
    case Tag::Proj1:
    case Tag::Proj2:
      return 1;
    case Tag::Pi:
    case Tag::Lam:
    case Tag::App:
    case Tag::Sigma:
      return 2;
    case Tag::Pair:
    case Tag::LLam:
      return 3;
    case Tag::LApp:
      return 4;
  }
  return 0;
}

bool hasBinder(Tag tag) {
  return tag == Tag::Pi || tag == Tag::Lam || tag == Tag::Sigma || tag == Tag::LLam ||
         tag == Tag::LApp;
}

Expr Expr::make(Tag tag, std::string name, std::vector<Expr> kids, std::uint32_t index) {
  if (kids.size() != arityOf(tag)) {
    throw std::logic_error("Expr::make: wrong number of children");
  }
  auto node = std::make_shared<Node>();
  node->tag = tag;
  node->name = std::move(name);
  node->index = index;
  node->arity = static_cast<std::uint8_t>(kids.size());

  std::size_t h = static_cast<std::size_t>(tag) * 0x100000001b3ULL;
  switch (tag) {
    case Tag::Sort:
    case Tag::Free:
      h = mix(h, std::hash<std::string>{}(node->name));
      break;
    case Tag::Bound:
      h = mix(h, index);
      node->looseBound = index + 1;
      break;
    default:
      break;
  }
  if (tag == Tag::Free) node->freeMask = nameBit(node->name);

  for (std::size_t i = 0; i < kids.size(); ++i) {
    const Expr& k = kids[i];
    if (!k) throw std::logic_error("Expr::make: null child");
    h = mix(h, k.hash());
    node->size += static_cast<std::uint32_t>(k.size());
    node->freeMask |= k.freeMask();
    std::uint32_t lb = k.looseBound();
    if (bindsChild(tag, i)) lb = lb > 0 ? lb - 1 : 0;
    node->looseBound = std::max(node->looseBound, lb);
    node->kids[i] = k;
  }
  node->hash = h;
  return Expr(std::move(node));
}

Expr sort(Sort s) { return Expr::make(Tag::Sort, std::move(s.name), {}); }
Expr star() {
  static const Expr e = sort(Sort::star());
  return e;
}
Expr box() {
  static const Expr e = sort(Sort::box());
  return e;
}
Expr var(std::string name) { return Expr::make(Tag::Free, std::move(name), {}); }
Expr bound(std::uint32_t index) { return Expr::make(Tag::Bound, "", {}, index); }

Expr pi(const std::string& x, Expr domain, const Expr& codomain) {
  return Expr::make(Tag::Pi, x, {std::move(domain), abstract(codomain, x)});
}

Expr arrow(Expr domain, Expr codomain) {
  return Expr::make(Tag::Pi, "", {std::move(domain), shift(codomain, 1)});
}

Expr lam(const std::string& x, Expr annot, const Expr& body) {
  return Expr::make(Tag::Lam, x, {std::move(annot), abstract(body, x)});
}

Expr app(Expr fun, Expr arg) { return Expr::make(Tag::App, "", {std::move(fun), std::move(arg)}); }

Expr apps(Expr fun, std::initializer_list<Expr> args) {
  for (const Expr& a : args) fun = app(std::move(fun), a);
  return fun;
}

Expr sigma(const std::string& x, Expr first, const Expr& second) {
  return Expr::make(Tag::Sigma, x, {std::move(first), abstract(second, x)});
}

Expr pair(Expr first, Expr second, Expr annot) {
  return Expr::make(Tag::Pair, "", {std::move(first), std::move(second), std::move(annot)});
}

Expr proj1(Expr e) { return Expr::make(Tag::Proj1, "", {std::move(e)}); }
Expr proj2(Expr e) { return Expr::make(Tag::Proj2, "", {std::move(e)}); }

Expr withChildren(const Expr& e, std::vector<Expr> kids) {
  bool same = kids.size() == e.arity();
  for (std::size_t i = 0; same && i < kids.size(); ++i) same = kids[i].get() == e.child(i).get();
  if (same) return e;
  return Expr::make(e.tag(), e.name(), std::move(kids), e.index());
}

namespace {

// Rebuilds `e` by applying `f(child, depth)` to every child, where depth is
// incremented for scoped children.
template <class F>
Expr mapChildren(const Expr& e, std::uint32_t depth, F&& f) {
  std::vector<Expr> kids;
  kids.reserve(e.arity());
  bool changed = false;
  for (std::size_t i = 0; i < e.arity(); ++i) {
    Expr k = f(e.child(i), depth + (bindsChild(e.tag(), i) ? 1U : 0U));
    changed = changed || k.get() != e.child(i).get();
    kids.push_back(std::move(k));
  }
  if (!changed) return e;
  return Expr::make(e.tag(), e.name(), std::move(kids), e.index());
}

}  // namespace

bool alphaEq(const Expr& a, const Expr& b) {
  if (a.get() == b.get()) return true;
  if (a.hash() != b.hash() || a.tag() != b.tag() || a.size() != b.size()) return false;
  switch (a.tag()) {
    case Tag::Sort:
    case Tag::Free:
      return a.name() == b.name();
    case Tag::Bound:
      return a.index() == b.index();
    default:
      break;
  }
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!alphaEq(a.child(i), b.child(i))) return false;
  }
  return true;
}

namespace {

void collectFree(const Expr& e, std::set<std::string>& out) {
  if (e.freeMask() == 0) return;
  if (e.is(Tag::Free)) {
    out.insert(e.name());
    return;
  }
  for (std::size_t i = 0; i < e.arity(); ++i) collectFree(e.child(i), out);
}

}  // namespace

std::set<std::string> freeVars(const Expr& e) {
  std::set<std::string> out;
  collectFree(e, out);
  return out;
}

bool occursFree(const Expr& e, std::string_view name) {
  if ((e.freeMask() & nameBit(name)) == 0) return false;
  if (e.is(Tag::Free)) return e.name() == name;
  for (std::size_t i = 0; i < e.arity(); ++i) {
    if (occursFree(e.child(i), name)) return true;
  }
  return false;
}

bool occursLoose(const Expr& e, std::uint32_t k) {
  if (e.looseBound() <= k) return false;
  if (e.is(Tag::Bound)) return e.index() == k;
  for (std::size_t i = 0; i < e.arity(); ++i) {
    if (occursLoose(e.child(i), k + (bindsChild(e.tag(), i) ? 1U : 0U))) return true;
  }
  return false;
}

Expr shift(const Expr& e, std::uint32_t by, std::uint32_t cutoff) {
  if (by == 0 || e.looseBound() <= cutoff) return e;
  if (e.is(Tag::Bound)) return e.index() >= cutoff ? bound(e.index() + by) : e;
  return mapChildren(e, cutoff, [by](const Expr& k, std::uint32_t d) { return shift(k, by, d); });
}

namespace {

Expr substGo(const Expr& e, std::string_view x, std::uint64_t bit, const Expr& repl,
             std::uint32_t depth) {
  if ((e.freeMask() & bit) == 0) return e;
  if (e.is(Tag::Free)) return e.name() == x ? shift(repl, depth) : e;
  return mapChildren(e, depth, [&](const Expr& k, std::uint32_t d) {
    return substGo(k, x, bit, repl, d);
  });
}

Expr substManyGo(const Expr& e, const std::map<std::string, Expr>& m, std::uint64_t mask,
                 std::uint32_t depth) {
  if ((e.freeMask() & mask) == 0) return e;
  if (e.is(Tag::Free)) {
    auto it = m.find(e.name());
    return it == m.end() ? e : shift(it->second, depth);
  }
  return mapChildren(e, depth, [&](const Expr& k, std::uint32_t d) {
    return substManyGo(k, m, mask, d);
  });
}

Expr instantiateGo(const Expr& e, const Expr& value, std::uint32_t depth) {
  if (e.looseBound() <= depth) return e;
  if (e.is(Tag::Bound)) {
    if (e.index() == depth) return shift(value, depth);
    return e.index() > depth ? bound(e.index() - 1) : e;
  }
  return mapChildren(e, depth, [&](const Expr& k, std::uint32_t d) {
    return instantiateGo(k, value, d);
  });
}

Expr abstractGo(const Expr& e, std::string_view x, std::uint64_t bit, std::uint32_t depth) {
  if ((e.freeMask() & bit) == 0 && e.looseBound() <= depth) return e;
  if (e.is(Tag::Free)) return e.name() == x ? bound(depth) : e;
  if (e.is(Tag::Bound)) return e.index() >= depth ? bound(e.index() + 1) : e;
  return mapChildren(e, depth, [&](const Expr& k, std::uint32_t d) {
    return abstractGo(k, x, bit, d);
  });
}

}  // namespace

Expr subst(const Expr& target, std::string_view x, const Expr& replacement) {
  return substGo(target, x, nameBit(x), replacement, 0);
}

Expr substMany(const Expr& target, const std::map<std::string, Expr>& replacements) {
  std::uint64_t mask = 0;
  for (const auto& [name, _] : replacements) mask |= nameBit(name);
  return substManyGo(target, replacements, mask, 0);
}

Expr instantiate(const Expr& scope, const Expr& value) {
  return instantiateGo(scope, value, 0);
}

Expr open(const Expr& scope, const std::string& x) { return instantiate(scope, var(x)); }

Expr abstract(const Expr& body, std::string_view x) {
  return abstractGo(body, x, nameBit(x), 0);
}

bool isReservedName(std::string_view name) { return !name.empty() && name.front() == '_'; }

bool mentionsReservedName(const Expr& e) {
  if (e.is(Tag::Free)) return isReservedName(e.name());
  if (hasBinder(e.tag()) && isReservedName(e.name())) return true;
  for (std::size_t i = 0; i < e.arity(); ++i) {
    if (mentionsReservedName(e.child(i))) return true;
  }
  return false;
}

std::string renderPath(const Path& p) {
  if (p.empty()) return "/";
  std::string out;
  for (auto i : p) {
    out += '/';
    out += std::to_string(i);
  }
  return out;
}

const Expr& subtermAt(const Expr& e, const Path& p) {
  const Expr* cur = &e;
  for (auto i : p) {
    if (i >= cur->arity()) throw std::out_of_range("subtermAt: bad path " + renderPath(p));
    cur = &cur->child(i);
  }
  return *cur;
}

Expr replaceAt(const Expr& e, const Path& p, const Expr& replacement) {
  if (p.empty()) return replacement;
  std::vector<const Expr*> spine{&e};
  for (std::size_t d = 0; d + 1 < p.size(); ++d) spine.push_back(&spine.back()->child(p[d]));
  Expr cur = replacement;
  for (std::size_t d = p.size(); d-- > 0;) {
    const Expr& parent = *spine[d];
    std::vector<Expr> kids;
    kids.reserve(parent.arity());
    for (std::size_t i = 0; i < parent.arity(); ++i) {
      kids.push_back(i == p[d] ? cur : parent.child(i));
    }
    cur = Expr::make(parent.tag(), parent.name(), std::move(kids), parent.index());
  }
  return cur;
}

const Context::Binding* Context::find(std::string_view name) const {
  for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it) {
    if (it->name == name) return &*it;
  }
  return nullptr;
}

Context Context::extended(std::string name, Expr type) const {
  Context c = *this;
  c.push(std::move(name), std::move(type));
  return c;
}

void Context::push(std::string name, Expr type) {
  bindings_.push_back(Binding{std::move(name), std::move(type)});
}

Context Context::prefix(std::size_t n) const {
  n = std::min(n, bindings_.size());
  return Context(std::vector<Binding>(bindings_.begin(), bindings_.begin() + static_cast<std::ptrdiff_t>(n)));
}

std::string freshName(std::string_view hint, const Context& ctx,
                      std::initializer_list<const Expr*> avoid) {
  std::string name = hint.empty() ? std::string("x") : std::string(hint);
  auto taken = [&](const std::string& n) {
    if (ctx.contains(n)) return true;
    for (const Expr* e : avoid) {
      if (e != nullptr && *e && occursFree(*e, n)) return true;
    }
    return false;
  };
  while (taken(name)) name += '\'';
  return name;
}

}  // namespace pts
