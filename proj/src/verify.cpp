#include "pts/verify.hpp"

#include <chrono>
#include <exception>
#include <functional>

#include "pts/labeled.hpp"
#include "pts/parse.hpp"
#include "pts/translation.hpp"
#include "pts/typing.hpp"

namespace pts {

namespace {

std::string describe(const CorpusEntry& e) { return e.name; }

std::string judgementOf(const Judgement& j) { return renderJudgement(j.ctx, j.term, j.type); }

// Runs `body`, turning any exception into a FAIL line.
void guard(Report& r, const std::string& check, const std::string& what, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& ex) {
    r.fail(check, what + " (" + ex.what() + ")");
  }
}

Expr typeOf(const CorpusEntry& e, std::size_t fuel) {
  PtsSpec spec = e.spec();
  if (e.type) {
    checkType(spec, e.ctx, e.term, *e.type, fuel);
    return *e.type;
  }
  return inferType(spec, e.ctx, e.term, fuel);
}

bool isCC(const CorpusEntry& e) { return e.isPositive() && e.system == "cc"; }

}  // namespace

Report verifyTyping(const std::vector<CorpusEntry>& corpus, std::size_t fuel) {
  Report r;
  for (const auto& e : corpus) {
    if (e.isPositive()) {
      guard(r, "typing", describe(e), [&] {
        wfContext(e.spec(), e.ctx, fuel);
        Expr t = typeOf(e, fuel);
        r.pass("typing", describe(e) + " : " + printExpr(t));
      });
      continue;
    }
    std::string want = typeErrorKindName(*e.expect);
    try {
      PtsSpec spec = e.spec();
      wfContext(spec, e.ctx, fuel);
      Expr t = typeOf(e, fuel);
      r.fail("rejection", describe(e) + " expected " + want + " but typed as " + printExpr(t));
    } catch (const TypeError& ex) {
      // An ill-formed context wraps the error from the binding.
      std::string got = typeErrorKindName(ex.kind());
      bool ok = ex.kind() == *e.expect;
      r.add(ok, "rejection", describe(e) + " expected " + want + ", got " + got + (ok ? "" : ": " + std::string(ex.what())));
    } catch (const std::exception& ex) {
      r.fail("rejection", describe(e) + " expected " + want + " (" + ex.what() + ")");
    }
  }
  return r;
}

Report verifyPreservation(const std::vector<CorpusEntry>& corpus, std::size_t depth, std::size_t fuel) {
  Report r;
  for (const auto& e : corpus) {
    if (!e.isPositive()) continue;
    guard(r, "preservation", describe(e), [&] {
      PtsSpec spec = e.spec();
      Expr t = typeOf(e, fuel);
      ReductSet reducts = reductsWithin(e.term, depth);
      if (reducts.truncated) {
        r.fail("preservation", describe(e) + ": reduct closure truncated");
      }
      std::size_t bad = 0;
      for (const Expr& b : reducts.terms) {
        Expr bt;
        try {
          bt = inferType(spec, e.ctx, b, fuel);
        } catch (const TypeError& ex) {
          ++bad;
          r.fail("preservation", describe(e) + ": reduct " + printExpr(b) + " untypeable: " + ex.what());
          continue;
        }
        if (betaEq(bt, t, fuel) != Conv::Equal) {
          ++bad;
          r.fail("preservation", describe(e) + ": reduct " + printExpr(b) + " has type " + printExpr(bt));
        }
      }
      if (bad == 0) r.pass("preservation", describe(e) + " (" + std::to_string(reducts.terms.size()) + " reducts)");
    });
  }
  return r;
}

Report verifyTrichotomy(const std::vector<CorpusEntry>& corpus, std::size_t fuel) {
  Report r;
  for (const auto& e : corpus) {
    if (!isCC(e)) continue;
    guard(r, "trichotomy", describe(e), [&] {
      PtsSpec spec = e.spec();
      std::vector<Expr> subjects{e.term};
      Expr t = typeOf(e, fuel);
      if (!(t.is(Tag::Sort) && spec.isTopSort(Sort{t.name()}))) subjects.push_back(t);
      for (const Expr& a : subjects) {
        Classification c = classify(spec, e.ctx, a, fuel);
        Expr ty = normalize(inferType(spec, e.ctx, a, fuel), fuel).term;
        bool kind = ty.is(Tag::Sort) && spec.isTopSort(Sort{ty.name()});
        bool ok;
        switch (c.tag) {
          case Classification::Tag::Kind:
            ok = kind;
            break;
          case Classification::Tag::GammaConstructor: {
            Expr tt = normalize(inferType(spec, e.ctx, ty, fuel), fuel).term;
            ok = !kind && tt.is(Tag::Sort) && spec.isTopSort(Sort{tt.name()});
            break;
          }
          default: {
            Expr tt = normalize(inferType(spec, e.ctx, ty, fuel), fuel).term;
            ok = !kind && tt.is(Tag::Sort) && !spec.isTopSort(Sort{tt.name()});
            break;
          }
        }
        r.add(ok, "trichotomy", describe(e) + ": " + printExpr(a) + " is a " + c.name());
      }
    });
  }
  return r;
}

Report verifyTranslation(const std::vector<CorpusEntry>& corpus, std::size_t fuel) {
  Report r;
  for (const auto& e : corpus) {
    if (!e.isCoreCC()) continue;
    guard(r, "translation", describe(e), [&] {
      Report sub = checkTranslation(e.ctx, e.term, fuel);
      for (auto& l : sub.lines) l.judgement = describe(e) + ": " + l.judgement;
      r.append(sub);
    });
  }
  return r;
}

Report verifySimulation(const std::vector<CorpusEntry>& corpus, std::size_t depth, std::size_t fuel) {
  Report r;
  for (const auto& e : corpus) {
    if (!e.isCoreCC()) continue;
    guard(r, "simulation", describe(e), [&] {
      Report sub = checkReductionPreservation(e.ctx, e.term, depth, fuel);
      for (auto& l : sub.lines) l.judgement = describe(e) + ": " + l.judgement;
      r.append(sub);
    });
  }
  return r;
}

Report verifyLabeled(const std::vector<CorpusEntry>& corpus, std::size_t fuel) {
  Report r;
  for (const auto& e : corpus) {
    if (!e.isCoreCC()) continue;
    guard(r, "labeled", describe(e), [&] {
      PtsSpec spec = e.spec();
      Expr la = labelTerm(spec, e.ctx, e.term, fuel);
      r.add(alphaEq(erase(la), e.term), "round-trip", describe(e) + ": " + printExpr(la));

      std::vector<std::string> mism = labelMismatches(la, fuel);
      r.add(mism.empty(), "label-match",
            describe(e) + (mism.empty() ? "" : ": " + mism.front()));

      std::size_t bad = 0;
      std::size_t count = 0;
      Expr plain = erase(la);
      std::vector<Expr> plainSteps = stepAll(plain);
      for (const Expr& lb : tightStepAll(la)) {
        ++count;
        Expr eb = erase(lb);
        bool ok = alphaEq(eb, plain);
        for (const Expr& s : plainSteps) ok = ok || alphaEq(s, eb);
        if (!ok) {
          ++bad;
          r.fail("erasure-step", describe(e) + ": " + printExpr(lb));
        }
      }
      if (bad == 0) r.pass("erasure-step", describe(e) + " (" + std::to_string(count) + " tight steps)");

      Context lctx = labelContext(spec, e.ctx, fuel);
      LabeledTyping lt = labeledInfer(spec, lctx, la, fuel);
      r.add(betaEq(erase(lt.type), typeOf(e, fuel), fuel) == Conv::Equal, "labeled-typing",
            describe(e) + " : " + printExpr(lt.type));
    });
  }
  return r;
}

Report verifyNormalization(const std::vector<CorpusEntry>& corpus, std::size_t fuel) {
  Report r;
  for (const auto& e : corpus) {
    if (!isCC(e)) continue;
    guard(r, "normalization", describe(e), [&] {
      Reduced n = normalize(e.term, fuel);
      r.add(!n.exhausted, "normalization",
            describe(e) + (n.exhausted ? ": fuel exhausted" : " in " + std::to_string(n.steps) + " steps"));
    });
  }
  return r;
}

Report verifyConfluence(const std::vector<Judgement>& terms, std::size_t depth) {
  Report r;
  for (const auto& j : terms) {
    std::vector<Expr> next = stepAll(j.term);
    std::vector<Reduced> nfs;
    for (const Expr& b : next) nfs.push_back(normalize(b, depth));
    std::vector<std::optional<ReductSet>> closures(next.size());
    std::size_t bad = 0;
    for (std::size_t i = 0; i < next.size(); ++i) {
      for (std::size_t k = i + 1; k < next.size(); ++k) {
        // Both normalize within the depth to the same term: joined.
        if (!nfs[i].exhausted && !nfs[k].exhausted && alphaEq(nfs[i].term, nfs[k].term)) continue;
        if (!closures[i]) closures[i] = reductsWithin(next[i], depth);
        if (!closures[k]) closures[k] = reductsWithin(next[k], depth);
        if (intersects(closures[i]->terms, closures[k]->terms)) continue;
        ++bad;
        bool trunc = closures[i]->truncated || closures[k]->truncated;
        r.fail("confluence", judgementOf(j) + ": " + printExpr(next[i]) + " and " + printExpr(next[k]) +
                                 (trunc ? " not joined (search truncated)" : " not joinable"));
      }
    }
    if (bad == 0) r.pass("confluence", judgementOf(j) + " (" + std::to_string(next.size()) + " reducts)");
  }
  return r;
}

namespace {

void subterms(const Expr& e, std::vector<Expr>& out) {
  out.push_back(e);
  for (std::size_t i = 0; i < e.arity(); ++i) {
    // Loose indices make subterms under binders open; they still reduce.
    subterms(e.child(i), out);
  }
}

}  // namespace

Report verifyKeyRedexes(const std::vector<Judgement>& terms, std::size_t depth) {
  Report r;
  for (const auto& j : terms) {
    std::vector<Expr> subs;
    subterms(j.term, subs);
    std::size_t bad = 0;
    std::size_t keyed = 0;
    std::size_t squares = 0;
    auto failOn = [&](const std::string& check, const std::string& msg) {
      ++bad;
      r.fail(check, judgementOf(j) + ": " + msg);
    };
    for (const Expr& e : subs) {
      std::optional<Path> kp = keyRedexPath(e);
      if (isBase(e) && kp) failOn("base-no-key", printExpr(e) + " is base but has a key redex");
      if (!kp) continue;
      ++keyed;
      Expr k = redK(e);
      bool inSteps = false;
      for (const Expr& s : stepAll(e)) inSteps = inSteps || alphaEq(s, k);
      if (!inSteps) failOn("key-step", "redK(" + printExpr(e) + ") not a one-step reduct");
      for (const Step& s : oneSteps(e)) {
        if (s.position == *kp) continue;
        ++squares;
        std::optional<Path> kb = keyRedexPath(s.result);
        if (!kb) {
          failOn("commutation", printExpr(s.result) + " lost its key redex");
          continue;
        }
        Expr target = redK(s.result);
        SearchOutcome o = search(k, target, SearchLimits{depth, 200000});
        if (o.result != SearchResult::Found) {
          failOn("commutation", "redK(" + printExpr(e) + ") does not reach redK(" + printExpr(s.result) +
                                    ") within " + std::to_string(depth) +
                                    (o.result == SearchResult::Truncated ? " (inconclusive, truncated)"
                                                                         : " (inconclusive at the bound)"));
        }
      }
    }
    if (bad == 0) r.pass("key-redex", judgementOf(j) + " (" + std::to_string(keyed) + " keyed subterms, " +
                            std::to_string(squares) + " squares)");
  }
  return r;
}

Report verifySubstitution(const std::vector<SubstInstance>& instances, std::size_t fuel) {
  Report r;
  for (const auto& s : instances) {
    std::string what = renderJudgement(s.ctx, s.a, var("?")) + " [" + s.x + " := " + printExpr(s.b) + "]";
    guard(r, "substitution", what, [&] { r.append(checkSubstLemmas(s.ctx, s.a, s.x, s.b, fuel)); });
  }
  return r;
}

std::vector<Section> verifyAll(const std::vector<CorpusEntry>& corpus, const VerifyOptions& o) {
  std::vector<Section> out;
  auto run = [&](std::string name, const std::function<Report()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep = f();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(Section{std::move(name), std::move(rep), secs});
  };
  TermGenerator gen(o.seed, o.maxSize);
  std::vector<Judgement> terms;
  for (std::size_t i = 0; i < o.generated; ++i) terms.push_back(gen.next());
  std::vector<SubstInstance> insts;
  for (std::size_t i = 0; i < o.substInstances; ++i) insts.push_back(gen.nextSubstInstance());

  run("typing", [&] { return verifyTyping(corpus, o.fuel); });
  run("preservation", [&] { return verifyPreservation(corpus, o.preservationDepth, o.fuel); });
  run("confluence", [&] { return verifyConfluence(terms, o.depth); });
  run("trichotomy", [&] { return verifyTrichotomy(corpus, o.fuel); });
  run("translation", [&] { return verifyTranslation(corpus, o.fuel); });
  run("simulation", [&] { return verifySimulation(corpus, o.depth, o.fuel); });
  run("substitution", [&] { return verifySubstitution(insts, o.fuel); });
  run("key-redex", [&] { return verifyKeyRedexes(terms, o.keyRedexDepth); });
  run("labeled", [&] { return verifyLabeled(corpus, o.fuel); });
  run("normalization", [&] { return verifyNormalization(corpus, o.fuel); });
  return out;
}

}  // namespace pts
