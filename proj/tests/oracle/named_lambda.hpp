#pragma once

// Reference reducer over named terms with capture-avoiding substitution.
// Shares nothing with the kernel's reduction code; only the conversion
// from pts::Expr reads the kernel's nodes.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pts/syntax.hpp"

namespace oracle {

enum class K { Sort, Var, Pi, Lam, App, Sigma, Pair, Proj1, Proj2, LLam, LApp };

struct Term;
using T = std::shared_ptr<const Term>;

struct Term {
  K k;
  std::string name;
  std::vector<T> kids;
};

inline T mk(K k, std::string name, std::vector<T> kids = {}) {
  return std::make_shared<const Term>(Term{k, std::move(name), std::move(kids)});
}

// Children under the node's binder.
inline bool binds(K k, std::size_t i) {
  switch (k) {
    case K::Pi:
    case K::Lam:
    case K::Sigma:
      return i == 1;
    case K::LLam:
      return i == 1 || i == 2;
    case K::LApp:
      return i == 1;
    default:
      return false;
  }
}

inline std::string freshVar(const std::string& base) {
  static std::size_t n = 0;
  return base.substr(0, base.find('~')) + "~" + std::to_string(++n);
}

inline T fromExpr(const pts::Expr& e, std::vector<std::string>& names) {
  using pts::Tag;
  static const std::map<Tag, K> kinds{{Tag::Pi, K::Pi},       {Tag::Lam, K::Lam},     {Tag::App, K::App},
                                      {Tag::Sigma, K::Sigma}, {Tag::Pair, K::Pair},   {Tag::Proj1, K::Proj1},
                                      {Tag::Proj2, K::Proj2}, {Tag::LLam, K::LLam},   {Tag::LApp, K::LApp}};
  switch (e.tag()) {
    case Tag::Sort:
      return mk(K::Sort, e.name());
    case Tag::Free:
      return mk(K::Var, e.name());
    case Tag::Bound:
      return mk(K::Var, names.at(names.size() - 1 - e.index()));
    default:
      break;
  }
  K k = kinds.at(e.tag());
  std::string x = freshVar(e.name().empty() ? "x" : e.name());
  std::vector<T> kids;
  for (std::size_t i = 0; i < e.arity(); ++i) {
    bool b = binds(k, i);
    if (b) names.push_back(x);
    kids.push_back(fromExpr(e.child(i), names));
    if (b) names.pop_back();
  }
  bool binder = k == K::Pi || k == K::Lam || k == K::Sigma || k == K::LLam || k == K::LApp;
  return mk(k, binder ? x : "", std::move(kids));
}

inline T fromExpr(const pts::Expr& e) {
  std::vector<std::string> names;
  return fromExpr(e, names);
}

inline void freeVars(const T& t, std::set<std::string>& out, std::set<std::string>& bound) {
  if (t->k == K::Var) {
    if (!bound.count(t->name)) out.insert(t->name);
    return;
  }
  for (std::size_t i = 0; i < t->kids.size(); ++i) {
    if (binds(t->k, i) && !bound.count(t->name)) {
      bound.insert(t->name);
      freeVars(t->kids[i], out, bound);
      bound.erase(t->name);
    } else {
      freeVars(t->kids[i], out, bound);
    }
  }
}

inline std::set<std::string> freeVars(const T& t) {
  std::set<std::string> out, bound;
  freeVars(t, out, bound);
  return out;
}

inline T subst(const T& t, const std::string& x, const T& s, const std::set<std::string>& fvS);

inline T rename(const T& t, const std::string& from, const std::string& to) {
  return subst(t, from, mk(K::Var, to), {to});
}

// [s/x]t, renaming binders that would capture a free variable of s.
inline T subst(const T& t, const std::string& x, const T& s, const std::set<std::string>& fvS) {
  if (t->k == K::Var) return t->name == x ? s : t;
  if (t->k == K::Sort) return t;
  std::string y = t->name;
  bool hasBinder = false;
  for (std::size_t i = 0; i < t->kids.size(); ++i) hasBinder = hasBinder || binds(t->k, i);
  std::vector<T> scoped(t->kids);
  if (hasBinder && fvS.count(y) && y != x) {
    std::string z = freshVar(y);
    for (std::size_t i = 0; i < scoped.size(); ++i) {
      if (binds(t->k, i)) scoped[i] = rename(scoped[i], y, z);
    }
    y = z;
  }
  std::vector<T> kids;
  for (std::size_t i = 0; i < scoped.size(); ++i) {
    if (binds(t->k, i) && y == x) {
      kids.push_back(scoped[i]);
    } else {
      kids.push_back(subst(scoped[i], x, s, fvS));
    }
  }
  return mk(t->k, hasBinder ? y : t->name, std::move(kids));
}

inline T subst(const T& t, const std::string& x, const T& s) { return subst(t, x, s, freeVars(s)); }

inline bool alphaEq(const T& a, const T& b, std::map<std::string, int>& ea, std::map<std::string, int>& eb,
                    int depth) {
  if (a->k != b->k || a->kids.size() != b->kids.size()) return false;
  if (a->k == K::Sort) return a->name == b->name;
  if (a->k == K::Var) {
    auto ia = ea.find(a->name);
    auto ib = eb.find(b->name);
    if (ia == ea.end() || ib == eb.end()) return ia == ea.end() && ib == eb.end() && a->name == b->name;
    return ia->second == ib->second;
  }
  for (std::size_t i = 0; i < a->kids.size(); ++i) {
    if (binds(a->k, i)) {
      std::map<std::string, int> inA = ea, inB = eb;
      inA[a->name] = depth;
      inB[b->name] = depth;
      bool ok = alphaEq(a->kids[i], b->kids[i], inA, inB, depth + 1);
      if (!ok) return false;
    } else if (!alphaEq(a->kids[i], b->kids[i], ea, eb, depth)) {
      return false;
    }
  }
  return true;
}

inline bool alphaEq(const T& a, const T& b) {
  std::map<std::string, int> ea, eb;
  return alphaEq(a, b, ea, eb, 0);
}

inline std::optional<T> contractRoot(const T& t) {
  if (t->k == K::App && t->kids[0]->k == K::Lam) {
    const T& f = t->kids[0];
    return subst(f->kids[1], f->name, t->kids[1]);
  }
  if (t->k == K::Proj1 && t->kids[0]->k == K::Pair) return t->kids[0]->kids[0];
  if (t->k == K::Proj2 && t->kids[0]->k == K::Pair) return t->kids[0]->kids[1];
  if (t->k == K::LApp && t->kids[2]->k == K::LLam) {
    const T& f = t->kids[2];
    // Labels are (x:A) -> B on both sides; compare as Pi types.
    T la = mk(K::Pi, t->name, {t->kids[0], t->kids[1]});
    T lf = mk(K::Pi, f->name, {f->kids[0], f->kids[1]});
    if (alphaEq(la, lf)) return subst(f->kids[2], f->name, t->kids[3]);
  }
  return std::nullopt;
}

inline std::optional<T> stepLO(const T& t) {
  if (auto r = contractRoot(t)) return r;
  for (std::size_t i = 0; i < t->kids.size(); ++i) {
    if (auto r = stepLO(t->kids[i])) {
      std::vector<T> kids = t->kids;
      kids[i] = *r;
      return mk(t->k, t->name, std::move(kids));
    }
  }
  return std::nullopt;
}

// Every one-step reduct, not deduplicated.
inline void stepsAll(const T& t, std::vector<T>& out) {
  if (auto r = contractRoot(t)) out.push_back(*r);
  for (std::size_t i = 0; i < t->kids.size(); ++i) {
    std::vector<T> sub;
    stepsAll(t->kids[i], sub);
    for (const T& s : sub) {
      std::vector<T> kids = t->kids;
      kids[i] = s;
      out.push_back(mk(t->k, t->name, std::move(kids)));
    }
  }
}

inline std::vector<T> stepsAll(const T& t) {
  std::vector<T> out;
  stepsAll(t, out);
  return out;
}

/// Normal form by leftmost-outermost reduction, or nullopt past `fuel` steps.
inline std::optional<T> normalize(T t, std::size_t fuel) {
  for (std::size_t i = 0; i <= fuel; ++i) {
    auto n = stepLO(t);
    if (!n) return t;
    t = *n;
  }
  return std::nullopt;
}

inline bool betaEq(const pts::Expr& a, const pts::Expr& b, std::size_t fuel = 10000) {
  auto na = normalize(fromExpr(a), fuel);
  auto nb = normalize(fromExpr(b), fuel);
  return na && nb && alphaEq(*na, *nb);
}

inline bool sameTerm(const pts::Expr& a, const pts::Expr& b) { return alphaEq(fromExpr(a), fromExpr(b)); }

}  // namespace oracle
