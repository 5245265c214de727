#include <cctype>
#include <optional>
#include <vector>

#include "pts/parse.hpp"

namespace pts {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      message_(message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok {
  Star,
  Box,
  SortName,
  Ident,
  LParen,
  RParen,
  Colon,
  Arrow,
  Backslash,
  Dot,
  Comma,
  LAngle,
  RAngle,
  LBracket,
  RBracket,
  At,
  Sig,
  Proj1,
  Proj2,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool identCont(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '\'';
}

std::vector<Token> lex(std::string_view src, const ParseOptions& opts) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      advance(1);
      continue;
    }
    std::size_t l = line;
    std::size_t cc = col;
    auto single = [&](Tok t) {
      out.push_back(Token{t, std::string(1, c), l, cc});
      advance(1);
    };
    switch (c) {
      case '*': single(Tok::Star); continue;
      case '#': single(Tok::Box); continue;
      case '(': single(Tok::LParen); continue;
      case ')': single(Tok::RParen); continue;
      case ':': single(Tok::Colon); continue;
      case '\\': single(Tok::Backslash); continue;
      case ',': single(Tok::Comma); continue;
      case '<': single(Tok::LAngle); continue;
      case '>': single(Tok::RAngle); continue;
      case '[': single(Tok::LBracket); continue;
      case ']': single(Tok::RBracket); continue;
      case '@': single(Tok::At); continue;
      default: break;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back(Token{Tok::Arrow, "->", l, cc});
      advance(2);
      continue;
    }
    if (c == '.') {
      if (i + 1 < src.size() && (src[i + 1] == '1' || src[i + 1] == '2') &&
          !(i + 2 < src.size() && identCont(src[i + 2]))) {
        out.push_back(Token{src[i + 1] == '1' ? Tok::Proj1 : Tok::Proj2,
                            std::string(src.substr(i, 2)), l, cc});
        advance(2);
      } else {
        single(Tok::Dot);
      }
      continue;
    }
    if (c == '%') {
      std::size_t j = i + 1;
      while (j < src.size() && identCont(src[j])) ++j;
      if (j == i + 1) throw ParseError("expected a sort name after '%'", l, cc);
      out.push_back(Token{Tok::SortName, std::string(src.substr(i + 1, j - i - 1)), l, cc});
      advance(j - i);
      continue;
    }
    if (c == '_') {
      std::size_t j = i + 1;
      while (j < src.size() && (identCont(src[j]) || src[j] == '$')) ++j;
      std::string name(src.substr(i, j - i));
      if (!opts.allowReserved) {
        throw ParseError("identifier '" + name + "' is in the reserved namespace", l, cc);
      }
      out.push_back(Token{Tok::Ident, std::move(name), l, cc});
      advance(j - i);
      continue;
    }
    if (identStart(c)) {
      std::size_t j = i;
      while (j < src.size() && identCont(src[j])) ++j;
      std::string name(src.substr(i, j - i));
      out.push_back(Token{name == "Sig" ? Tok::Sig : Tok::Ident, name, l, cc});
      advance(j - i);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", l, cc);
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

const char* describe(Tok t) {
  switch (t) {
    case Tok::Star: return "'*'";
    case Tok::Box: return "'#'";
    case Tok::SortName: return "sort name";
    case Tok::Ident: return "identifier";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Colon: return "':'";
    case Tok::Arrow: return "'->'";
    case Tok::Backslash: return "'\\'";
    case Tok::Dot: return "'.'";
    case Tok::Comma: return "','";
    case Tok::LAngle: return "'<'";
    case Tok::RAngle: return "'>'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::At: return "'@'";
    case Tok::Sig: return "'Sig'";
    case Tok::Proj1: return "'.1'";
    case Tok::Proj2: return "'.2'";
    case Tok::End: return "end of input";
  }
  return "token";
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const ParseOptions& opts) : toks_(std::move(toks)), opts_(opts) {}

  Expr parseAll() {
    Expr e = expr();
    expect(Tok::End);
    return e;
  }

  Context::Binding binding() {
    const Token& t = expect(Tok::Ident);
    std::string name = t.text;
    expect(Tok::Colon);
    Expr type = expr();
    expect(Tok::End);
    return {name, type};
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    std::size_t at = std::min(pos_ + k, toks_.size() - 1);
    return toks_[at];
  }
  bool at(Tok t) const { return peek().kind == t; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg, const Token& t) const {
    throw ParseError(msg, t.line, t.column);
  }
  const Token& expect(Tok t) {
    if (!at(t)) {
      fail(std::string("expected ") + describe(t) + ", found " + describe(peek().kind) +
               (peek().text.empty() ? "" : " '" + peek().text + "'"),
           peek());
    }
    return next();
  }
  void requireSigma(const Token& t) const {
    if (!opts_.sigma) fail("Sigma form used while the Sigma extension is disabled", t);
  }
  void requireLabeled(const Token& t) const {
    if (!opts_.labeled) fail("labeled form is only accepted in labeled syntax", t);
  }

  bool atDependentPi() const {
    return at(Tok::LParen) && peek(1).kind == Tok::Ident && peek(2).kind == Tok::Colon;
  }
  bool atBinder() const { return at(Tok::Backslash) || at(Tok::Sig) || atDependentPi(); }
  bool atPrimaryStart() const {
    switch (peek().kind) {
      case Tok::Star:
      case Tok::Box:
      case Tok::SortName:
      case Tok::Ident:
      case Tok::LParen:
      case Tok::LAngle:
        return true;
      default:
        return false;
    }
  }

  Expr inScope(const std::string& name, const std::function<Expr()>& body) {
    scope_.push_back(name);
    Expr e = body();
    scope_.pop_back();
    return e;
  }

  Expr expr() {
    if (atBinder()) return binderExpr();
    Expr lhs = appExpr();
    if (at(Tok::Arrow)) {
      next();
      Expr rhs = inScope("", [&] { return expr(); });
      return Expr::make(Tag::Pi, "", {lhs, rhs});
    }
    return lhs;
  }

  Expr binderExpr() {
    const Token& start = peek();
    if (at(Tok::Backslash)) {
      next();
      if (at(Tok::LBracket)) {
        requireLabeled(peek());
        return labeledLambda();
      }
      std::string x = expect(Tok::Ident).text;
      expect(Tok::Colon);
      Expr annot = expr();
      expect(Tok::Dot);
      Expr body = inScope(x, [&] { return expr(); });
      return Expr::make(Tag::Lam, x, {annot, body});
    }
    if (at(Tok::Sig)) {
      requireSigma(start);
      next();
      std::string x = expect(Tok::Ident).text;
      expect(Tok::Colon);
      Expr first = expr();
      expect(Tok::Dot);
      Expr second = inScope(x, [&] { return expr(); });
      return Expr::make(Tag::Sigma, x, {first, second});
    }
    expect(Tok::LParen);
    std::string x = expect(Tok::Ident).text;
    expect(Tok::Colon);
    Expr domain = expr();
    expect(Tok::RParen);
    expect(Tok::Arrow);
    Expr codomain = inScope(x, [&] { return expr(); });
    return Expr::make(Tag::Pi, x, {domain, codomain});
  }

  struct Label {
    std::string x;
    Expr domain;
    Expr codomain;
  };

  Label label() {
    expect(Tok::LBracket);
    std::string x = expect(Tok::Ident).text;
    expect(Tok::Colon);
    Expr domain = appExpr();
    expect(Tok::Arrow);
    Expr codomain = inScope(x, [&] { return expr(); });
    expect(Tok::RBracket);
    return {x, domain, codomain};
  }

  Expr labeledLambda() {
    Label l = label();
    const Token& binderTok = expect(Tok::Ident);
    if (binderTok.text != l.x) fail("lambda binder must repeat the label's variable '" + l.x + "'", binderTok);
    const Token& colon = expect(Tok::Colon);
    Expr annot = expr();
    if (!alphaEq(annot, l.domain)) fail("lambda annotation must repeat the label's domain", colon);
    expect(Tok::Dot);
    Expr body = inScope(l.x, [&] { return expr(); });
    return Expr::make(Tag::LLam, l.x, {l.domain, l.codomain, body});
  }

  Expr appExpr() {
    Expr head = postfix();
    for (;;) {
      if (at(Tok::At)) {
        requireLabeled(peek());
        next();
        Label l = label();
        Expr arg = postfix();
        head = Expr::make(Tag::LApp, l.x, {l.domain, l.codomain, head, arg});
      } else if (atBinder()) {
        // A binder in argument position extends to the right.
        Expr arg = binderExpr();
        return Expr::make(Tag::App, "", {head, arg});
      } else if (atPrimaryStart()) {
        Expr arg = postfix();
        head = Expr::make(Tag::App, "", {head, arg});
      } else {
        return head;
      }
    }
  }

  Expr postfix() {
    Expr e = primary();
    while (at(Tok::Proj1) || at(Tok::Proj2)) {
      const Token& t = next();
      requireSigma(t);
      e = Expr::make(t.kind == Tok::Proj1 ? Tag::Proj1 : Tag::Proj2, "", {e});
    }
    return e;
  }

  Expr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Star: next(); return star();
      case Tok::Box: next(); return box();
      case Tok::SortName: next(); return sort(Sort{t.text});
      case Tok::Ident: {
        next();
        for (std::size_t k = scope_.size(); k-- > 0;) {
          if (scope_[k] == t.text) {
            return bound(static_cast<std::uint32_t>(scope_.size() - 1 - k));
          }
        }
        return var(t.text);
      }
      case Tok::LParen: {
        next();
        Expr e = expr();
        expect(Tok::RParen);
        return e;
      }
      case Tok::LAngle: {
        requireSigma(t);
        next();
        Expr first = expr();
        expect(Tok::Comma);
        Expr second = expr();
        expect(Tok::RAngle);
        expect(Tok::Colon);
        Expr annot = atBinder() ? binderExpr() : postfix();
        return Expr::make(Tag::Pair, "", {first, second, annot});
      }
      default:
        fail(std::string("expected an expression, found ") + describe(t.kind), t);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const ParseOptions& opts_;
  std::vector<std::string> scope_;
};

}  // namespace

Expr parseExpr(std::string_view text, const ParseOptions& options) {
  Parser p(lex(text, options), options);
  return p.parseAll();
}

Context::Binding parseBinding(std::string_view text, const ParseOptions& options) {
  Parser p(lex(text, options), options);
  return p.binding();
}

Context parseContext(std::string_view text, const ParseOptions& options) {
  Context ctx;
  std::size_t lineNo = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++lineNo;
    bool blank = line.find_first_not_of(" \t\r") == std::string_view::npos;
    if (!blank) {
      try {
        auto b = parseBinding(line, options);
        ctx.push(std::move(b.name), std::move(b.type));
      } catch (const ParseError& err) {
        throw ParseError(err.message(), lineNo, err.column());
      }
    }
    start = end + 1;
  }
  return ctx;
}

}  // namespace pts

namespace pts {
namespace {

enum Level { kTop = 0, kApp = 1, kPostfix = 2, kAtom = 3 };

Level levelOf(const Expr& e) {
  switch (e.tag()) {
    case Tag::Sort:
    case Tag::Free:
    case Tag::Bound:
      return kAtom;
    case Tag::Proj1:
    case Tag::Proj2:
      return kPostfix;
    case Tag::App:
    case Tag::LApp:
    case Tag::Pair:
      return kApp;
    default:
      return kTop;
  }
}

class Printer {
 public:
  explicit Printer(const Expr& root) : free_(freeVars(root)) {}

  void print(const Expr& e, Level ctx) {
    bool parens = levelOf(e) < ctx;
    if (parens) out_ += '(';
    body(e);
    if (parens) out_ += ')';
  }

  std::string take() { return std::move(out_); }

 private:
  std::string pick(const std::string& hint, std::initializer_list<const Expr*> scoped) {
    std::string name = hint.empty() ? "x" : hint;
    for (;;) {
      bool clash = free_.count(name) > 0;
      for (std::size_t j = 0; j < names_.size() && !clash; ++j) {
        if (names_[j] != name) continue;
        auto idx = static_cast<std::uint32_t>(names_.size() - j);
        for (const Expr* s : scoped) clash = clash || occursLoose(*s, idx);
      }
      if (!clash) return name;
      name += '\'';
    }
  }

  void scoped(const std::string& name, const Expr& e, Level ctx) {
    names_.push_back(name);
    print(e, ctx);
    names_.pop_back();
  }

  void body(const Expr& e) {
    switch (e.tag()) {
      case Tag::Sort:
        if (e.name() == "*" || e.name() == "#") {
          out_ += e.name();
        } else {
          out_ += '%' + e.name();
        }
        return;
      case Tag::Free:
        out_ += e.name();
        return;
      case Tag::Bound: {
        std::uint32_t i = e.index();
        if (i < names_.size()) {
          out_ += names_[names_.size() - 1 - i];
        } else {
          out_ += "^" + std::to_string(i);
        }
        return;
      }
      case Tag::Pi: {
        const Expr& cod = e.child(1);
        if (!occursLoose(cod, 0)) {
          print(e.child(0), kApp);
          out_ += " -> ";
          scoped("", cod, kTop);
          return;
        }
        std::string x = pick(e.name(), {&cod});
        out_ += "(" + x + ":";
        print(e.child(0), kTop);
        out_ += ") -> ";
        scoped(x, cod, kTop);
        return;
      }
      case Tag::Lam:
      case Tag::Sigma: {
        std::string x = pick(e.name(), {&e.child(1)});
        out_ += e.is(Tag::Lam) ? "\\" : "Sig ";
        out_ += x + ":";
        print(e.child(0), kTop);
        out_ += ". ";
        scoped(x, e.child(1), kTop);
        return;
      }
      case Tag::App:
        print(e.child(0), kApp);
        out_ += ' ';
        print(e.child(1), kPostfix);
        return;
      case Tag::Pair:
        out_ += '<';
        print(e.child(0), kTop);
        out_ += ", ";
        print(e.child(1), kTop);
        out_ += "> : ";
        print(e.child(2), kPostfix);
        return;
      case Tag::Proj1:
      case Tag::Proj2:
        print(e.child(0), kPostfix);
        out_ += e.is(Tag::Proj1) ? ".1" : ".2";
        return;
      case Tag::LLam: {
        std::string x = pick(e.name(), {&e.child(1), &e.child(2)});
        out_ += '\\';
        label(x, e.child(0), e.child(1));
        out_ += " " + x + " : ";
        print(e.child(0), kTop);
        out_ += " . ";
        scoped(x, e.child(2), kTop);
        return;
      }
      case Tag::LApp: {
        print(e.child(2), kApp);
        out_ += " @";
        std::string x = pick(e.name(), {&e.child(1)});
        label(x, e.child(0), e.child(1));
        out_ += ' ';
        print(e.child(3), kPostfix);
        return;
      }
    }
  }

  void label(const std::string& x, const Expr& dom, const Expr& cod) {
    out_ += "[" + x + " : ";
    print(dom, kApp);
    out_ += " -> ";
    scoped(x, cod, kTop);
    out_ += ']';
  }

  std::set<std::string> free_;
  std::vector<std::string> names_;
  std::string out_;
};

}  // namespace

std::string printExpr(const Expr& e) {
  Printer p(e);
  p.print(e, kTop);
  return p.take();
}

std::string printContext(const Context& ctx) {
  std::string out;
  for (const auto& b : ctx.bindings()) {
    out += b.name + " : " + printExpr(b.type) + "\n";
  }
  return out;
}

}  // namespace pts
