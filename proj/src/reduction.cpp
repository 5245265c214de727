#include "pts/reduction.hpp"

#include <queue>
#include <stdexcept>

#include "pts/parse.hpp"

namespace pts {

const char* redexKindName(RedexKind k) {
  switch (k) {
    case RedexKind::Beta: return "beta";
    case RedexKind::Proj1: return "proj1";
    case RedexKind::Proj2: return "proj2";
    case RedexKind::TightBeta: return "tight-beta";
  }
  return "?";
}

namespace {

bool labelsMatch(const Expr& app, const Expr& lam) {
  return alphaEq(app.child(0), lam.child(0)) && alphaEq(app.child(1), lam.child(1));
}

}  // namespace

std::optional<RedexKind> redexAt(const Expr& e) {
  switch (e.tag()) {
    case Tag::App:
      if (e.child(0).is(Tag::Lam)) return RedexKind::Beta;
      break;
    case Tag::Proj1:
      if (e.child(0).is(Tag::Pair)) return RedexKind::Proj1;
      break;
    case Tag::Proj2:
      if (e.child(0).is(Tag::Pair)) return RedexKind::Proj2;
      break;
    case Tag::LApp:
      if (e.child(2).is(Tag::LLam) && labelsMatch(e, e.child(2))) return RedexKind::TightBeta;
      break;
    default:
      break;
  }
  return std::nullopt;
}

Expr contract(const Expr& e) {
  auto k = redexAt(e);
  if (!k) throw std::invalid_argument("contract: not a redex: " + printExpr(e));
  switch (*k) {
    case RedexKind::Beta:
      return instantiate(e.child(0).child(1), e.child(1));
    case RedexKind::Proj1:
      return e.child(0).child(0);
    case RedexKind::Proj2:
      return e.child(0).child(1);
    case RedexKind::TightBeta:
      return instantiate(e.child(2).child(2), e.child(3));
  }
  return e;
}

namespace {

void collectSteps(const Expr& e, Path& path, std::vector<Step>& out) {
  if (auto k = redexAt(e)) out.push_back(Step{path, *k, contract(e)});
  for (std::size_t i = 0; i < e.arity(); ++i) {
    std::size_t before = out.size();
    path.push_back(static_cast<std::uint8_t>(i));
    collectSteps(e.child(i), path, out);
    path.pop_back();
    for (std::size_t j = before; j < out.size(); ++j) {
      std::vector<Expr> kids;
      for (std::size_t c = 0; c < e.arity(); ++c) kids.push_back(c == i ? out[j].result : e.child(c));
      out[j].result = Expr::make(e.tag(), e.name(), std::move(kids), e.index());
    }
  }
}

bool findLO(const Expr& e, Path& path) {
  if (redexAt(e)) return true;
  for (std::size_t i = 0; i < e.arity(); ++i) {
    path.push_back(static_cast<std::uint8_t>(i));
    if (findLO(e.child(i), path)) return true;
    path.pop_back();
  }
  return false;
}

std::optional<Expr> headStep(const Expr& e) {
  if (redexAt(e)) return contract(e);
  std::size_t head;
  switch (e.tag()) {
    case Tag::App:
    case Tag::Proj1:
    case Tag::Proj2:
      head = 0;
      break;
    case Tag::LApp:
      head = 2;
      break;
    default:
      return std::nullopt;
  }
  auto inner = headStep(e.child(head));
  if (!inner) return std::nullopt;
  return replaceAt(e, Path{static_cast<std::uint8_t>(head)}, *inner);
}

}  // namespace

std::vector<Step> oneSteps(const Expr& e) {
  std::vector<Step> out;
  Path path;
  collectSteps(e, path, out);
  return out;
}

std::vector<Expr> stepAll(const Expr& e) {
  std::vector<Expr> out;
  ExprSet seen;
  for (auto& s : oneSteps(e)) {
    if (seen.insert(s.result).second) out.push_back(std::move(s.result));
  }
  return out;
}

bool isNormal(const Expr& e) {
  Path p;
  return !findLO(e, p);
}

std::optional<Step> leftmostOutermost(const Expr& e) {
  Path p;
  if (!findLO(e, p)) return std::nullopt;
  const Expr& redex = subtermAt(e, p);
  RedexKind k = *redexAt(redex);
  return Step{p, k, replaceAt(e, p, contract(redex))};
}

Reduced normalize(const Expr& e, std::size_t fuel) {
  Reduced r{e, 0, false};
  for (;;) {
    Path p;
    if (!findLO(r.term, p)) return r;
    if (r.steps >= fuel) {
      r.exhausted = true;
      return r;
    }
    r.term = replaceAt(r.term, p, contract(subtermAt(r.term, p)));
    ++r.steps;
  }
}

Reduced whnf(const Expr& e, std::size_t fuel) {
  Reduced r{e, 0, false};
  for (;;) {
    auto next = headStep(r.term);
    if (!next) return r;
    if (r.steps >= fuel) {
      r.exhausted = true;
      return r;
    }
    r.term = std::move(*next);
    ++r.steps;
  }
}

Conv betaEq(const Expr& a, const Expr& b, std::size_t fuel) {
  if (alphaEq(a, b)) return Conv::Equal;
  Reduced na = normalize(a, fuel);
  if (na.exhausted) return Conv::Undetermined;
  Reduced nb = normalize(b, fuel);
  if (nb.exhausted) return Conv::Undetermined;
  return alphaEq(na.term, nb.term) ? Conv::Equal : Conv::Distinct;
}

StepTrace traceNormalization(const Expr& e, std::size_t fuel) {
  StepTrace t{e, {}, false};
  Expr cur = e;
  for (;;) {
    auto s = leftmostOutermost(cur);
    if (!s) return t;
    if (t.steps.size() >= fuel) {
      t.truncated = true;
      return t;
    }
    cur = s->result;
    t.steps.push_back(std::move(*s));
  }
}

std::string renderTrace(const StepTrace& t) {
  std::string out = "0 - start " + printExpr(t.start) + "\n";
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const Step& s = t.steps[i];
    out += std::to_string(i + 1) + " " + renderPath(s.position) + " " + redexKindName(s.kind) +
           " " + printExpr(s.result) + "\n";
  }
  if (t.truncated) {
    out += "truncated after " + std::to_string(t.steps.size()) + " steps (fuel exhausted)\n";
  }
  return out;
}

bool isBase(const Expr& e) {
  switch (e.tag()) {
    case Tag::Free:
    case Tag::Bound:
      return true;
    case Tag::App:
    case Tag::Proj1:
    case Tag::Proj2:
      return isBase(e.child(0));
    case Tag::LApp:
      return isBase(e.child(2));
    default:
      return false;
  }
}

std::optional<Path> keyRedexPath(const Expr& e) {
  std::uint8_t head;
  switch (e.tag()) {
    case Tag::App:
      if (e.child(0).is(Tag::Lam)) return Path{};
      head = 0;
      break;
    case Tag::LApp:
      if (redexAt(e)) return Path{};
      head = 2;
      break;
    case Tag::Proj1:
    case Tag::Proj2:
      head = 0;
      break;
    default:
      return std::nullopt;
  }
  auto inner = keyRedexPath(e.child(head));
  if (!inner) return std::nullopt;
  inner->insert(inner->begin(), head);
  return inner;
}

std::optional<Expr> keyRedexOf(const Expr& e) {
  auto p = keyRedexPath(e);
  if (!p) return std::nullopt;
  return subtermAt(e, *p);
}

Expr redK(const Expr& e) {
  auto p = keyRedexPath(e);
  if (!p) throw std::invalid_argument("redK: no key redex in " + printExpr(e));
  return replaceAt(e, *p, contract(subtermAt(e, *p)));
}

SearchOutcome search(const Expr& a, const Expr& b, const SearchLimits& limits, bool strict) {
  SearchOutcome out;
  if (!strict && alphaEq(a, b)) {
    out.result = SearchResult::Found;
    out.states = 1;
    return out;
  }
  ExprSet visited;
  if (!strict) visited.insert(a);
  std::vector<Expr> frontier{a};
  bool truncated = false;
  for (std::size_t depth = 1; depth <= limits.maxDepth && !frontier.empty(); ++depth) {
    std::vector<Expr> next;
    for (const Expr& cur : frontier) {
      for (Expr& r : stepAll(cur)) {
        if (alphaEq(r, b)) {
          out.result = SearchResult::Found;
          out.depth = depth;
          out.states = visited.size() + 1;
          return out;
        }
        if (visited.size() >= limits.maxStates) {
          truncated = true;
          continue;
        }
        if (visited.insert(r).second) next.push_back(std::move(r));
      }
    }
    frontier = std::move(next);
  }
  out.states = visited.size();
  out.result = truncated ? SearchResult::Truncated : SearchResult::NotFound;
  return out;
}

SearchOutcome guidedSearch(const Expr& a, const Expr& b, const SearchLimits& limits,
                           bool strict) {
  struct Item {
    std::size_t distance;
    std::size_t depth;
    std::size_t order;
    Expr term;
    bool operator>(const Item& o) const {
      if (distance != o.distance) return distance > o.distance;
      if (depth != o.depth) return depth > o.depth;
      return order > o.order;
    }
  };
  SearchOutcome out;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  ExprSet visited;
  std::size_t order = 0;
  queue.push(Item{treeDistance(a, b), 0, order++, a});
  if (!strict) visited.insert(a);
  bool truncated = false;
  while (!queue.empty()) {
    Item cur = queue.top();
    queue.pop();
    if ((cur.depth > 0 || !strict) && cur.distance == 0) {
      out.result = SearchResult::Found;
      out.depth = cur.depth;
      out.states = visited.size();
      return out;
    }
    if (cur.depth >= limits.maxDepth) {
      continue;
    }
    for (Expr& r : stepAll(cur.term)) {
      if (visited.size() >= limits.maxStates) {
        truncated = true;
        break;
      }
      if (!visited.insert(r).second) continue;
      std::size_t d = treeDistance(r, b);
      queue.push(Item{d, cur.depth + 1, order++, std::move(r)});
    }
    if (truncated) break;
  }
  out.states = visited.size();
  out.result = truncated ? SearchResult::Truncated : SearchResult::NotFound;
  return out;
}

bool reachable(const Expr& a, const Expr& b, std::size_t maxDepth) {
  return search(a, b, SearchLimits{maxDepth}).result == SearchResult::Found;
}

bool reachableStrict(const Expr& a, const Expr& b, std::size_t maxDepth) {
  return search(a, b, SearchLimits{maxDepth}, true).result == SearchResult::Found;
}

ReductSet reductsWithin(const Expr& e, std::size_t maxDepth, std::size_t maxStates) {
  ReductSet out;
  out.terms.insert(e);
  std::vector<Expr> frontier{e};
  for (std::size_t depth = 1; depth <= maxDepth && !frontier.empty(); ++depth) {
    std::vector<Expr> next;
    for (const Expr& cur : frontier) {
      for (Expr& r : stepAll(cur)) {
        if (out.terms.size() >= maxStates) {
          out.truncated = true;
          return out;
        }
        if (out.terms.insert(r).second) next.push_back(std::move(r));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

bool intersects(const ExprSet& a, const ExprSet& b) {
  const ExprSet& small = a.size() <= b.size() ? a : b;
  const ExprSet& large = a.size() <= b.size() ? b : a;
  for (const Expr& e : small) {
    if (large.count(e) > 0) return true;
  }
  return false;
}

bool joinable(const Expr& a, const Expr& b, std::size_t maxDepth) {
  return intersects(reductsWithin(a, maxDepth).terms, reductsWithin(b, maxDepth).terms);
}

std::size_t treeDistance(const Expr& a, const Expr& b) {
  if (alphaEq(a, b)) return 0;
  bool sameShape = a.tag() == b.tag() && a.arity() == b.arity();
  if (sameShape && a.arity() == 0) sameShape = false;  // distinct leaves
  if (!sameShape) return a.size() + b.size();
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.arity(); ++i) d += treeDistance(a.child(i), b.child(i));
  return d;
}

}  // namespace pts
