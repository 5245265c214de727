#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "pts/syntax.hpp"

namespace pts {

struct ParseOptions {
  /// Accept `Sig`, `<a, b> : T`, `.1` and `.2`.
  bool sigma = false;
  /// Accept identifiers in the tool's underscore namespace.
  bool allowReserved = false;
  /// Accept the labeled forms `\[x : A -> B] x : A . b` and `f @[x : A -> B] a`.
  bool labeled = false;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  /// Message without the position prefix.
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

Expr parseExpr(std::string_view text, const ParseOptions& options = {});
inline Expr parseExpr(std::string_view text, bool sigma) {
  return parseExpr(text, ParseOptions{.sigma = sigma});
}

/// Parses one `x : expr` binding.
Context::Binding parseBinding(std::string_view text, const ParseOptions& options = {});
/// Parses a context file: one binding per line, blank lines ignored.
Context parseContext(std::string_view text, const ParseOptions& options = {});

/// Renders in the surface grammar; the output re-parses to an
/// alpha-equivalent expression (with `allowReserved` when the expression
/// carries generated names).
std::string printExpr(const Expr& e);
std::string printContext(const Context& ctx);

}  // namespace pts
