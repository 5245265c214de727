#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace pts {

/// A sort constant. The built-in systems use `*` (types) and `#` (kinds).
struct Sort {
  std::string name;

  static Sort star() { return Sort{"*"}; }
  static Sort box() { return Sort{"#"}; }

  auto operator<=>(const Sort&) const = default;
};

/// Node shapes. Terms, types and kinds share one grammar; the labeled
/// forms (LLam, LApp) only occur inside LabeledExpr values.
enum class Tag : std::uint8_t {
  Sort,
  Free,   // named free variable
  Bound,  // de Bruijn index, 0 = innermost binder
  Pi,     // [domain, codomain*]
  Lam,    // [annotation, body*]
  App,    // [function, argument]
  Sigma,  // [first, second*]
  Pair,   // [first, second, annotation]
  Proj1,  // [pair]
  Proj2,  // [pair]
  LLam,   // [domain, codomain*, body*]
  LApp,   // [domain, codomain*, function, argument]
};

struct Node;

/// Immutable, shared expression handle.
///
/// Bound variables are de Bruijn indices and free variables are names, so
/// two expressions are alpha-equivalent exactly when they are structurally
/// equal. Binder names are kept only as printing hints. Every expression
/// exposed by the public builders is locally closed.
class Expr {
 public:
  Expr() = default;

  static Expr make(Tag tag, std::string name, std::vector<Expr> kids,
                   std::uint32_t index = 0);

  Tag tag() const;
  /// Sort name, free-variable name, or binder hint.
  const std::string& name() const;
  std::uint32_t index() const;
  std::size_t arity() const;
  const Expr& child(std::size_t i) const;
  /// Structural hash, insensitive to binder hints.
  std::size_t hash() const;
  /// Node count.
  std::size_t size() const;
  /// One more than the largest loose de Bruijn index; 0 when locally closed.
  std::uint32_t looseBound() const;
  std::uint64_t freeMask() const;

  bool isLocallyClosed() const { return looseBound() == 0; }
  bool is(Tag t) const { return tag() == t; }
  const Node* get() const { return node_.get(); }
  explicit operator bool() const { return node_ != nullptr; }

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Node {
  Tag tag;
  std::string name;
  std::uint32_t index = 0;
  std::uint8_t arity = 0;
  std::array<Expr, 4> kids;
  std::size_t hash = 0;
  std::uint32_t size = 1;
  std::uint32_t looseBound = 0;
  std::uint64_t freeMask = 0;
};

inline Tag Expr::tag() const { return node_->tag; }
inline const std::string& Expr::name() const { return node_->name; }
inline std::uint32_t Expr::index() const { return node_->index; }
inline std::size_t Expr::arity() const { return node_->arity; }
inline const Expr& Expr::child(std::size_t i) const { return node_->kids[i]; }
inline std::size_t Expr::hash() const { return node_->hash; }
inline std::size_t Expr::size() const { return node_->size; }
inline std::uint32_t Expr::looseBound() const { return node_->looseBound; }
inline std::uint64_t Expr::freeMask() const { return node_->freeMask; }

/// True when child `i` of a node with this tag is under the node's binder.
bool bindsChild(Tag tag, std::size_t i);
/// Number of children for this tag.
std::size_t arityOf(Tag tag);
/// True for Pi, Lam, Sigma, LLam, LApp.
bool hasBinder(Tag tag);

// Builders. The named forms abstract the given free name in the scoped
// children; the variable becomes bound.
Expr sort(Sort s);
Expr star();
Expr box();
Expr var(std::string name);
Expr bound(std::uint32_t index);
Expr pi(const std::string& x, Expr domain, const Expr& codomain);
Expr arrow(Expr domain, Expr codomain);
Expr lam(const std::string& x, Expr annot, const Expr& body);
Expr app(Expr fun, Expr arg);
Expr apps(Expr fun, std::initializer_list<Expr> args);
Expr sigma(const std::string& x, Expr first, const Expr& second);
Expr pair(Expr first, Expr second, Expr annot);
Expr proj1(Expr e);
Expr proj2(Expr e);

/// Rebuilds a node with new children, keeping tag, name and index.
Expr withChildren(const Expr& e, std::vector<Expr> kids);

bool alphaEq(const Expr& a, const Expr& b);

struct AlphaHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};
struct AlphaEqual {
  bool operator()(const Expr& a, const Expr& b) const { return alphaEq(a, b); }
};
using ExprSet = std::unordered_set<Expr, AlphaHash, AlphaEqual>;
template <class V>
using ExprMap = std::unordered_map<Expr, V, AlphaHash, AlphaEqual>;

std::set<std::string> freeVars(const Expr& e);
bool occursFree(const Expr& e, std::string_view name);
/// True when de Bruijn index `k` (relative to `e`) occurs in `e`.
bool occursLoose(const Expr& e, std::uint32_t k);

/// Capture-avoiding replacement of the free variable `x` by `replacement`.
Expr subst(const Expr& target, std::string_view x, const Expr& replacement);
/// Simultaneous replacement of several free variables.
Expr substMany(const Expr& target, const std::map<std::string, Expr>& replacements);

/// Replaces the scope's bound variable (index 0) by `value`; `value` may
/// itself contain loose indices, which are shifted as needed.
Expr instantiate(const Expr& scope, const Expr& value);
/// Opens a binder scope with a free variable named `x`.
Expr open(const Expr& scope, const std::string& x);
/// Turns the free variable `x` into the scope's bound variable.
Expr abstract(const Expr& body, std::string_view x);
/// Adds `by` to every loose index at or above `cutoff`.
Expr shift(const Expr& e, std::uint32_t by, std::uint32_t cutoff = 0);

/// Identifiers starting with an underscore belong to the tool: `_0`, `_z`,
/// `_w$x`, `_y1`, ... The parser rejects them unless explicitly allowed.
bool isReservedName(std::string_view name);
/// True if `e` mentions a reserved name, free or as a binder hint.
bool mentionsReservedName(const Expr& e);

/// Position of a subterm: the child indices taken from the root.
using Path = std::vector<std::uint8_t>;
std::string renderPath(const Path& p);
const Expr& subtermAt(const Expr& e, const Path& p);
Expr replaceAt(const Expr& e, const Path& p, const Expr& replacement);

/// Ordered telescope of bindings.
class Context {
 public:
  struct Binding {
    std::string name;
    Expr type;
  };

  Context() = default;
  explicit Context(std::vector<Binding> bindings) : bindings_(std::move(bindings)) {}

  const Binding* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  Context extended(std::string name, Expr type) const;
  void push(std::string name, Expr type);

  const std::vector<Binding>& bindings() const { return bindings_; }
  std::size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }
  /// The first `n` bindings.
  Context prefix(std::size_t n) const;

 private:
  std::vector<Binding> bindings_;
};

/// A name based on `hint` that is neither bound in `ctx` nor free in any of
/// `avoid`.
std::string freshName(std::string_view hint, const Context& ctx,
                      std::initializer_list<const Expr*> avoid = {});

}  // namespace pts
