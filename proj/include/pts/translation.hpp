#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "pts/reduction.hpp"
#include "pts/report.hpp"
#include "pts/syntax.hpp"

namespace pts {

/// Generated names of the target context.
inline const std::string kZeroName = "_0";
inline const std::string kZName = "_z";
std::string witnessName(const std::string& x);  // "_w$x"

class TranslationError : public std::runtime_error {
 public:
  TranslationError(const std::string& message, Expr subterm)
      : std::runtime_error(message), subterm_(std::move(subterm)) {}
  const Expr& subterm() const { return subterm_; }

 private:
  Expr subterm_;
};

struct TransEnv {
  /// The CC context indexing both translations.
  Context ccContext;
  /// Supplies the `_y` binder hints.
  std::size_t freshCounter = 0;
  std::size_t fuel = kDefaultFuel;

  /// Every canonical inhabitant built while translating, with the CC
  /// context it was built under, when `logCanonical` is set.
  struct CanonicalUse {
    Context ccContext;
    Expr type;
  };
  bool logCanonical = false;
  std::vector<CanonicalUse> canonicalLog;

  TransEnv() = default;
  explicit TransEnv(Context ctx, std::size_t fuel = kDefaultFuel)
      : ccContext(std::move(ctx)), fuel(fuel) {}
};

/// Kind map from CC sorts and kinds to F-omega kinds.
Expr vKind(const Expr& kind);
/// Type translation; A must be a sort, kind or constructor under env.ccContext.
Expr transType(TransEnv& env, const Expr& a);
/// Term translation; works for terms, constructors and kinds.
Expr transTerm(TransEnv& env, const Expr& a);
Context transCtx(const Context& ctx, std::size_t fuel = kDefaultFuel);
/// Canonical inhabitant of an F-omega type or kind.
Expr canonical(const Expr& type);
inline Expr canonical(TransEnv& env, const Expr& type) {
  if (env.logCanonical) env.canonicalLog.push_back({env.ccContext, type});
  return canonical(type);
}

/// Checks the translated judgement in F-omega, plus the type-level
/// judgement when `a` is a sort, kind or constructor.
Report checkTranslation(const Context& ctx, const Expr& a, std::size_t fuel = kDefaultFuel);
/// Every one-step reduct of `a` must be matched by at least one step of
/// the translation.
Report checkReductionPreservation(const Context& ctx, const Expr& a, std::size_t maxDepth,
                                  std::size_t fuel = kDefaultFuel);
/// Checks the substitution lemmas for both translations. `x` must be bound
/// in `ctx` and `b` must have x's type in the bindings before x.
Report checkSubstLemmas(const Context& ctx, const Expr& a, const std::string& x, const Expr& b,
                        std::size_t fuel = kDefaultFuel);

/// `x : T, y : U |- a : A`
std::string renderJudgement(const Context& ctx, const Expr& a, const Expr& type);

}  // namespace pts
