#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pts/syntax.hpp"

namespace pts {

struct Judgement {
  Context ctx;
  Expr term;
  Expr type;
};

/// Instance for the substitution lemmas: `x : B` is the last binding of
/// `ctx`, `b : B` in the bindings before it, and `a` is typeable in `ctx`.
struct SubstInstance {
  Context ctx;
  Expr a;
  std::string x;
  Expr b;
};

/// Seeded, type-directed generator of well-typed CC terms over a fixed
/// base context of a few inductive-looking constants. Every result is
/// re-checked with the type checker before it is returned.
class TermGenerator {
 public:
  explicit TermGenerator(std::uint64_t seed, std::size_t maxSize = 25);

  static Context baseContext();

  /// A closed-over-base judgement with at least one redex.
  Judgement next();
  /// Any well-typed judgement (redexes not required).
  Judgement nextAny();
  SubstInstance nextSubstInstance();

 private:
  Expr gen(const Context& ctx, const Expr& target, int budget);
  Expr genType(const Context& ctx, int budget);
  Expr pickTarget(const Context& ctx);
  std::optional<Judgement> attempt(const Context& ctx, const Expr& target, int budget);

  std::mt19937_64 rng_;
  std::size_t maxSize_;
  std::size_t counter_ = 0;
};

}  // namespace pts
