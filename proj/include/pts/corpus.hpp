#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pts/syntax.hpp"
#include "pts/typing.hpp"

namespace pts {

/// One judgement file: `ctx:` bindings, a blank line, `term:` term, and
/// optionally `type:` type. Optional headers `system: <name>`,
/// `sigma: on` and `expect: <ErrorKind>` select the system and mark
/// negative cases.
struct CorpusEntry {
  std::string name;
  Context ctx;
  Expr term;
  std::optional<Expr> type;
  std::string system = "cc";
  bool sigma = false;
  std::optional<TypeErrorKind> expect;

  PtsSpec spec() const { return loadSpec(system).withSigma(sigma); }
  bool isPositive() const { return !expect.has_value(); }
  /// Plain CC judgement (no Sigma forms).
  bool isCoreCC() const { return isPositive() && system == "cc" && !sigma; }
};

/// Throws std::runtime_error (or ParseError) describing the problem.
CorpusEntry parseCorpusEntry(const std::string& text, const std::string& name = "<input>");
CorpusEntry loadCorpusEntry(const std::string& path);
/// Every regular file in `dir`, sorted by name.
std::vector<CorpusEntry> loadCorpus(const std::string& dir);

std::string renderCorpusEntry(const CorpusEntry& e);

}  // namespace pts
