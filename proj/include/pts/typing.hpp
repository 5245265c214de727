#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>

#include "pts/reduction.hpp"
#include "pts/syntax.hpp"

namespace pts {

struct PtsSpec {
  std::string name;
  std::set<Sort> sorts;
  std::set<std::pair<Sort, Sort>> axioms;
  std::set<std::tuple<Sort, Sort, Sort>> rules;
  bool sigma = false;

  static PtsSpec stlc();
  static PtsSpec systemF();
  static PtsSpec fomega();
  static PtsSpec cc();

  std::optional<Sort> axiomFor(const Sort& s) const;
  std::optional<Sort> ruleFor(const Sort& s1, const Sort& s2) const;
  bool hasSort(const Sort& s) const { return sorts.count(s) > 0; }
  /// A sort with no axiom above it, like `#`.
  bool isTopSort(const Sort& s) const { return hasSort(s) && !axiomFor(s); }

  /// Throws std::invalid_argument unless every mentioned sort is declared
  /// and axioms and rules are functional.
  void validate() const;

  PtsSpec withSigma(bool on) const {
    PtsSpec s = *this;
    s.sigma = on;
    return s;
  }
};

/// "stlc", "f", "fomega", "cc"; nullopt otherwise.
std::optional<PtsSpec> builtinSpec(std::string_view name);
/// Line-based spec text: `sort <s>`, `axiom <s1> <s2>`, `rule <s1> <s2> <s3>`.
PtsSpec parseSpec(std::string_view text, std::string name = "custom");
/// Built-in name or path to a spec file.
PtsSpec loadSpec(const std::string& nameOrPath);

enum class TypeErrorKind {
  UnboundVariable,
  NoAxiom,
  NoRule,
  NotAFunction,
  Mismatch,
  IllFormedContext,
  SortUntypeable,
  FuelExhausted,
  SigmaDisabled,
  DirectedConversionUndetermined,
};

const char* typeErrorKindName(TypeErrorKind k);
std::optional<TypeErrorKind> parseTypeErrorKind(std::string_view s);

class TypeError : public std::runtime_error {
 public:
  TypeError(TypeErrorKind kind, Path location, std::string detail);

  TypeErrorKind kind() const { return kind_; }
  const Path& location() const { return location_; }
  const std::string& detail() const { return detail_; }

 private:
  TypeErrorKind kind_;
  Path location_;
  std::string detail_;
};

void wfContext(const PtsSpec& spec, const Context& ctx, std::size_t fuel = kDefaultFuel);
Expr inferType(const PtsSpec& spec, const Context& ctx, const Expr& a,
               std::size_t fuel = kDefaultFuel);
void checkType(const PtsSpec& spec, const Context& ctx, const Expr& a, const Expr& type,
               std::size_t fuel = kDefaultFuel);

/// True for `*` and Pi chains ending in `*`: the syntactic shape of kinds.
bool isKindShaped(const Expr& e);

struct Classification {
  enum class Tag { Kind, GammaConstructor, GammaTerm };
  Tag tag;
  /// GammaConstructor whose type normalizes to `*`.
  bool isType = false;

  bool isKind() const { return tag == Tag::Kind; }
  bool isConstructor() const { return tag == Tag::GammaConstructor; }
  bool isTerm() const { return tag == Tag::GammaTerm; }
  std::string name() const;
};

Classification classify(const PtsSpec& spec, const Context& ctx, const Expr& a,
                        std::size_t fuel = kDefaultFuel);
inline Classification classify(const Context& ctx, const Expr& a,
                               std::size_t fuel = kDefaultFuel) {
  return classify(PtsSpec::cc(), ctx, a, fuel);
}

}  // namespace pts
