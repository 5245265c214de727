// pts: command-line front end for the kernel.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "pts/corpus.hpp"
#include "pts/labeled.hpp"
#include "pts/parse.hpp"
#include "pts/translation.hpp"
#include "pts/typing.hpp"
#include "pts/verify.hpp"

using json = nlohmann::json;
using namespace pts;

namespace {

enum Exit { kOk = 0, kTypeError = 1, kParseError = 2, kExhausted = 3, kPropertyFailure = 4 };

struct RunConfig {
  std::string system = "cc";
  std::size_t fuel = kDefaultFuel;
  bool sigma = false;
  std::size_t depth = 12;
  std::string format = "text";
  std::string ctxFile;
  std::vector<std::string> binds;
  bool reserved = false;
  std::uint64_t seed = VerifyOptions{}.seed;
  std::size_t generated = VerifyOptions{}.generated;
  bool quiet = false;

  bool machine() const { return format == "machine"; }
  ParseOptions parseOptions(bool labeled = false) const {
    return ParseOptions{.sigma = sigma, .allowReserved = reserved, .labeled = labeled};
  }
};

// Raised for bad input files; mapped to the parse-error exit code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli {
 public:
  explicit Cli(RunConfig cfg) : cfg_(std::move(cfg)) {}

  Context context(const std::string& positional = {}) const {
    Context ctx;
    ParseOptions po = cfg_.parseOptions();
    for (const std::string& file : {cfg_.ctxFile, positional}) {
      if (file.empty()) continue;
      Context fromFile = parseContext(readFile(file), po);
      for (const auto& b : fromFile.bindings()) ctx.push(b.name, b.type);
    }
    for (const auto& s : cfg_.binds) {
      auto b = parseBinding(s, po);
      ctx.push(b.name, b.type);
    }
    return ctx;
  }

  PtsSpec spec() const {
    try {
      return loadSpec(cfg_.system).withSigma(cfg_.sigma);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }

  Expr expr(const std::string& text, bool labeled = false) const {
    return parseExpr(text, cfg_.parseOptions(labeled));
  }

  // Emits one result: a JSON line in machine format, `text` otherwise.
  void emit(json record, const std::string& text) const {
    if (cfg_.machine()) {
      std::cout << record.dump() << "\n";
    } else if (!text.empty()) {
      std::cout << text << (text.back() == '\n' ? "" : "\n");
    }
  }

  int check(const std::string& a1, const std::string& a2, const std::string& a3) {
    std::string ctxFile = a3.empty() ? "" : a1;
    const std::string& termText = a3.empty() ? a1 : a2;
    const std::string& typeText = a3.empty() ? a2 : a3;
    Context ctx = context(ctxFile);
    Expr a = expr(termText);
    Expr t = expr(typeText);
    PtsSpec s = spec();
    wfContext(s, ctx, cfg_.fuel);
    checkType(s, ctx, a, t, cfg_.fuel);
    emit({{"command", "check"}, {"ok", true}, {"term", printExpr(a)}, {"type", printExpr(t)}}, "ok");
    return kOk;
  }

  int infer(const std::string& a1, const std::string& a2) {
    Context ctx = context(a2.empty() ? "" : a1);
    Expr a = expr(a2.empty() ? a1 : a2);
    PtsSpec s = spec();
    wfContext(s, ctx, cfg_.fuel);
    Expr t = inferType(s, ctx, a, cfg_.fuel);
    emit({{"command", "infer"}, {"ok", true}, {"term", printExpr(a)}, {"type", printExpr(t)}}, printExpr(t));
    return kOk;
  }

  int normalizeCmd(const std::string& text) {
    Expr a = expr(text);
    Reduced r = normalize(a, cfg_.fuel);
    json rec{{"command", "normalize"}, {"ok", !r.exhausted}, {"term", printExpr(r.term)}, {"steps", r.steps}};
    if (r.exhausted) {
      rec["error"] = "FuelExhausted";
      emit(rec, printExpr(r.term) + "\ntruncated after " + std::to_string(r.steps) + " steps (fuel exhausted)");
      return kExhausted;
    }
    emit(rec, printExpr(r.term));
    return kOk;
  }

  int trace(const std::string& text) {
    StepTrace t = traceNormalization(expr(text), cfg_.fuel);
    if (cfg_.machine()) {
      json steps = json::array();
      for (const Step& s : t.steps) {
        steps.push_back({{"path", renderPath(s.position)}, {"kind", redexKindName(s.kind)}, {"term", printExpr(s.result)}});
      }
      emit({{"command", "trace"}, {"ok", !t.truncated}, {"start", printExpr(t.start)}, {"steps", steps},
            {"truncated", t.truncated}},
           "");
    } else {
      std::cout << renderTrace(t);
    }
    return t.truncated ? kExhausted : kOk;
  }

  int classifyCmd(const std::string& a1, const std::string& a2) {
    Context ctx = context(a2.empty() ? "" : a1);
    Expr a = expr(a2.empty() ? a1 : a2);
    PtsSpec s = spec();
    wfContext(s, ctx, cfg_.fuel);
    Classification c = classify(s, ctx, a, cfg_.fuel);
    emit({{"command", "classify"}, {"ok", true}, {"term", printExpr(a)}, {"class", c.name()}}, c.name());
    return kOk;
  }

  int translate(const std::string& a1, const std::string& a2) {
    Context ctx = context(a2.empty() ? "" : a1);
    Expr a = expr(a2.empty() ? a1 : a2);
    PtsSpec cc = PtsSpec::cc();
    wfContext(cc, ctx, cfg_.fuel);
    Expr type = inferType(cc, ctx, a, cfg_.fuel);
    Context fctx = transCtx(ctx, cfg_.fuel);
    TransEnv env(ctx, cfg_.fuel);
    Expr ta = transTerm(env, a);
    Expr tA = transType(env, type);
    Report rep = checkTranslation(ctx, a, cfg_.fuel);
    if (cfg_.machine()) {
      json ctxJson = json::array();
      for (const auto& b : fctx.bindings()) ctxJson.push_back({{"name", b.name}, {"type", printExpr(b.type)}});
      json lines = json::array();
      for (const auto& l : rep.lines) lines.push_back({{"pass", l.pass}, {"check", l.check}, {"judgement", l.judgement}});
      emit({{"command", "translate"}, {"ok", rep.ok()}, {"ctx", ctxJson}, {"term", printExpr(ta)},
            {"type", printExpr(tA)}, {"report", lines}},
           "");
    } else {
      std::cout << "ctx:\n" << printContext(fctx) << "\nterm:\n" << printExpr(ta) << "\n\ntype:\n"
                << printExpr(tA) << "\n\nreport:\n" << rep.render();
    }
    return rep.ok() ? kOk : kPropertyFailure;
  }

  int label(const std::string& a1, const std::string& a2) {
    Context ctx = context(a2.empty() ? "" : a1);
    Expr a = expr(a2.empty() ? a1 : a2);
    PtsSpec s = spec();
    wfContext(s, ctx, cfg_.fuel);
    Expr la = labelTerm(s, ctx, a, cfg_.fuel);
    LabeledTyping lt = labeledInfer(s, labelContext(s, ctx, cfg_.fuel), la, cfg_.fuel);
    std::string text = printExpr(la);
    for (const auto& w : lt.warnings) text += "\nwarning: " + w;
    emit({{"command", "label"}, {"ok", true}, {"term", printExpr(la)}, {"type", printExpr(lt.type)},
          {"warnings", lt.warnings}},
         text);
    return kOk;
  }

  int eraseCmd(const std::string& text) {
    Expr e = erase(expr(text, true));
    emit({{"command", "erase"}, {"ok", true}, {"term", printExpr(e)}}, printExpr(e));
    return kOk;
  }

  int verify(const std::string& dir) {
    std::vector<CorpusEntry> corpus;
    try {
      corpus = loadCorpus(dir);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    VerifyOptions o;
    o.fuel = cfg_.fuel;
    o.depth = cfg_.depth;
    o.seed = cfg_.seed;
    o.generated = cfg_.generated;
    std::size_t failures = 0;
    for (const Section& s : verifyAll(corpus, o)) {
      failures += s.report.failures();
      if (cfg_.machine()) {
        for (const auto& l : s.report.lines) {
          if (cfg_.quiet && l.pass) continue;
          std::cout << json{{"section", s.name}, {"pass", l.pass}, {"check", l.check}, {"judgement", l.judgement}}.dump()
                    << "\n";
        }
        std::cout << json{{"section", s.name}, {"summary", true}, {"checks", s.report.lines.size()},
                          {"failures", s.report.failures()}, {"seconds", s.seconds}}
                         .dump()
                  << "\n";
      } else {
        for (const auto& l : s.report.lines) {
          if (cfg_.quiet && l.pass) continue;
          std::cout << (l.pass ? "PASS " : "FAIL ") << s.name << " " << l.check << " " << l.judgement << "\n";
        }
        std::ostringstream secs;
        secs.precision(2);
        secs << std::fixed << s.seconds;
        std::cout << "== " << s.name << ": " << s.report.lines.size() << " checks, " << s.report.failures()
                  << " failures, " << secs.str() << "s\n";
      }
    }
    return failures == 0 ? kOk : kPropertyFailure;
  }

  int fail(int code, const std::string& error, const std::string& message, const std::string& location = {}) const {
    if (cfg_.machine()) {
      json rec{{"ok", false}, {"error", error}, {"message", message}};
      if (!location.empty()) rec["location"] = location;
      std::cout << rec.dump() << "\n";
    } else {
      std::cerr << "error: " << message << "\n";
    }
    return code;
  }

 private:
  RunConfig cfg_;
};

int exitFor(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::FuelExhausted:
    case TypeErrorKind::DirectedConversionUndetermined:
      return kExhausted;
    default:
      return kTypeError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Pure type system kernel: checking, reduction, translation and property reports"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--system", cfg.system, "Built-in system (stlc, f, fomega, cc) or spec file")->capture_default_str();
  app.add_option("--fuel", cfg.fuel, "Reduction fuel")->capture_default_str();
  app.add_flag("--sigma", cfg.sigma, "Enable Sigma types");
  app.add_option("--depth", cfg.depth, "Reachability depth for verify")->capture_default_str();
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "machine"}))->capture_default_str();
  app.add_option("--ctx", cfg.ctxFile, "Context file, one `x : T` per line");
  app.add_option("--bind", cfg.binds, "Context binding `x : T`, repeatable; appended after --ctx")->allow_extra_args(false);
  app.add_flag("--reserved", cfg.reserved, "Accept generated `_` names in input");

  std::string p1, p2, p3;
  auto* check = app.add_subcommand("check", "Check a term against a type: [ctx] <term> <type>");
  check->add_option("args", p1)->required();
  check->add_option("term", p2)->required();
  check->add_option("type", p3);
  auto* infer = app.add_subcommand("infer", "Infer a type: [ctx] <term>");
  infer->add_option("args", p1)->required();
  infer->add_option("term", p2);
  auto* norm = app.add_subcommand("normalize", "Normal form of <term>");
  norm->add_option("term", p1)->required();
  auto* trace = app.add_subcommand("trace", "Leftmost-outermost reduction sequence of <term>");
  trace->add_option("term", p1)->required();
  auto* classify = app.add_subcommand("classify", "Kind, type, constructor or term: [ctx] <term>");
  classify->add_option("args", p1)->required();
  classify->add_option("term", p2);
  auto* translate = app.add_subcommand("translate", "Translate to F-omega and check: [ctx] <term>");
  translate->add_option("args", p1)->required();
  translate->add_option("term", p2);
  auto* label = app.add_subcommand("label", "Elaborate to a labeled term: [ctx] <term>");
  label->add_option("args", p1)->required();
  label->add_option("term", p2);
  auto* eraseSub = app.add_subcommand("erase", "Erase the labels of <labeled-term>");
  eraseSub->add_option("term", p1)->required();
  auto* verify = app.add_subcommand("verify", "Run the property report over <corpus-dir>");
  verify->add_option("dir", p1)->required();
  verify->add_option("--seed", cfg.seed, "Generator seed")->capture_default_str();
  verify->add_option("--generated", cfg.generated, "Generated terms for confluence and key redexes")->capture_default_str();
  verify->add_flag("--quiet", cfg.quiet, "Print failures and summaries only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseError;
  }

  Cli cli(cfg);
  try {
    if (*check) return cli.check(p1, p2, p3);
    if (*infer) return cli.infer(p1, p2);
    if (*norm) return cli.normalizeCmd(p1);
    if (*trace) return cli.trace(p1);
    if (*classify) return cli.classifyCmd(p1, p2);
    if (*translate) return cli.translate(p1, p2);
    if (*label) return cli.label(p1, p2);
    if (*eraseSub) return cli.eraseCmd(p1);
    if (*verify) return cli.verify(p1);
  } catch (const ParseError& e) {
    return cli.fail(kParseError, "ParseError", e.what());
  } catch (const UsageError& e) {
    return cli.fail(kParseError, "UsageError", e.what());
  } catch (const TypeError& e) {
    return cli.fail(exitFor(e.kind()), typeErrorKindName(e.kind()), e.what(), renderPath(e.location()));
  } catch (const TranslationError& e) {
    return cli.fail(kTypeError, "TranslationError", e.what());
  } catch (const std::exception& e) {
    return cli.fail(kTypeError, "Error", e.what());
  }
  return kOk;
}
