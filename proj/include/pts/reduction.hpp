#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pts/syntax.hpp"

namespace pts {

enum class RedexKind { Beta, Proj1, Proj2, TightBeta };

const char* redexKindName(RedexKind k);

struct Step {
  Path position;
  RedexKind kind;
  Expr result;
};

inline constexpr std::size_t kDefaultFuel = 10000;

/// Root redex kind, if `e` is itself a redex. Labeled applications only
/// count when both labels coincide.
std::optional<RedexKind> redexAt(const Expr& e);
/// Contracts the root redex. Precondition: redexAt(e).
Expr contract(const Expr& e);

/// Every one-step reduct with its position, in pre-order (root first,
/// children left to right). Not deduplicated.
std::vector<Step> oneSteps(const Expr& e);
/// One-step reducts deduplicated up to alpha-equivalence.
std::vector<Expr> stepAll(const Expr& e);
bool isNormal(const Expr& e);

/// Leftmost-outermost redex, if any.
std::optional<Step> leftmostOutermost(const Expr& e);

struct Reduced {
  Expr term;
  std::size_t steps = 0;
  /// Fuel ran out; `term` is the last intermediate term.
  bool exhausted = false;
};

Reduced normalize(const Expr& e, std::size_t fuel = kDefaultFuel);
/// Head reduction until the head is neither a beta nor a projection redex.
Reduced whnf(const Expr& e, std::size_t fuel = kDefaultFuel);

enum class Conv { Equal, Distinct, Undetermined };
Conv betaEq(const Expr& a, const Expr& b, std::size_t fuel = kDefaultFuel);

struct StepTrace {
  Expr start;
  std::vector<Step> steps;
  bool truncated = false;
};
StepTrace traceNormalization(const Expr& e, std::size_t fuel = kDefaultFuel);
/// One line per step: `<n> <path> <kind> <term>`.
std::string renderTrace(const StepTrace& t);

// Key redexes.
bool isBase(const Expr& e);
std::optional<Path> keyRedexPath(const Expr& e);
std::optional<Expr> keyRedexOf(const Expr& e);
/// Contracts the key redex in place; throws std::invalid_argument if none.
Expr redK(const Expr& e);

// Bounded reachability.
enum class SearchResult { Found, NotFound, Truncated };

struct SearchLimits {
  std::size_t maxDepth = 12;
  std::size_t maxStates = 200000;
};

struct SearchOutcome {
  SearchResult result = SearchResult::NotFound;
  /// Path length when found.
  std::size_t depth = 0;
  std::size_t states = 0;
};

/// Breadth-first search for a path from `a` to `b`. With `strict`, the
/// path must have at least one step.
SearchOutcome search(const Expr& a, const Expr& b, const SearchLimits& limits,
                     bool strict = false);
/// Best-first variant ordered by structural distance to `b`. Sound for
/// Found, incomplete otherwise.
SearchOutcome guidedSearch(const Expr& a, const Expr& b, const SearchLimits& limits,
                           bool strict = false);

bool reachable(const Expr& a, const Expr& b, std::size_t maxDepth);
bool reachableStrict(const Expr& a, const Expr& b, std::size_t maxDepth);

struct ReductSet {
  ExprSet terms;
  bool truncated = false;
};
/// All terms reachable from `e` in at most `maxDepth` steps.
ReductSet reductsWithin(const Expr& e, std::size_t maxDepth,
                        std::size_t maxStates = 200000);
bool joinable(const Expr& a, const Expr& b, std::size_t maxDepth);
bool intersects(const ExprSet& a, const ExprSet& b);

/// Size of the structural difference between two terms; 0 iff alphaEq.
std::size_t treeDistance(const Expr& a, const Expr& b);

}  // namespace pts
