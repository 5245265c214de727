#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pts/reduction.hpp"
#include "pts/syntax.hpp"
#include "pts/typing.hpp"

namespace pts {

// Labeled expressions share the Expr representation: a labeled lambda is
// an LLam node carrying the Pi label (x:A) -> B of the function, and a
// labeled application an LApp node carrying the label it was applied at.

Expr llam(const std::string& x, Expr domain, const Expr& codomain, const Expr& body);
Expr lapp(const std::string& x, Expr domain, const Expr& codomain, Expr fun, Expr arg);

/// True if `e` contains a labeled lambda or application.
bool hasLabels(const Expr& e);

/// Drops the labels.
Expr erase(const Expr& la);
Context erase(const Context& lctx);

/// One-step tight reducts. The beta rule only fires on matching labels;
/// every other position, labels included, is a congruence.
std::vector<Expr> tightStepAll(const Expr& la);

inline constexpr std::size_t kMaxLabelDepth = 64;

/// Labels a plain term along its type derivation. Lambdas get the Pi the
/// lambda rule synthesizes, applications the Pi exposed by weak head
/// normalization of the function's type.
Expr labelTerm(const PtsSpec& spec, const Context& ctx, const Expr& a,
               std::size_t fuel = kDefaultFuel);
Context labelContext(const PtsSpec& spec, const Context& ctx, std::size_t fuel = kDefaultFuel);

/// A reducible to B or B reducible to A within the budget. Distinct means
/// both searches finished without a path.
Conv directedConvertible(const Expr& a, const Expr& b, std::size_t fuel = kDefaultFuel);

struct LabeledTyping {
  Expr type;
  /// Applications whose label disagrees with the inferred function type
  /// after normalizing both erasures.
  std::vector<std::string> warnings;
};

/// Inference for the labeled system. `lctx` holds labeled types.
LabeledTyping labeledInfer(const PtsSpec& spec, const Context& lctx, const Expr& la,
                           std::size_t fuel = kDefaultFuel);

/// Beta-redex positions whose application and lambda labels differ after
/// normalizing the erased labels. One description per mismatch.
std::vector<std::string> labelMismatches(const Expr& la, std::size_t fuel = kDefaultFuel);

}  // namespace pts
