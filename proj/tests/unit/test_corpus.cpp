#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "pts/corpus.hpp"
#include "pts/parse.hpp"

using namespace pts;

TEST_CASE("corpus entry with context, term and type") {
  CorpusEntry e = parseCorpusEntry("ctx:\nA : *\nx : A\n\nterm:\nx\n\ntype:\nA\n", "basic");
  CHECK(e.name == "basic");
  CHECK(e.ctx.size() == 2);
  CHECK(alphaEq(e.term, var("x")));
  REQUIRE(e.type);
  CHECK(alphaEq(*e.type, var("A")));
  CHECK(e.system == "cc");
  CHECK_FALSE(e.sigma);
  CHECK(e.isPositive());
  CHECK(e.isCoreCC());
}

TEST_CASE("corpus entry headers") {
  CorpusEntry n = parseCorpusEntry("system: stlc\nexpect: NoRule\nctx:\n\nterm:\n\\A:*. A\n");
  CHECK(n.system == "stlc");
  REQUIRE(n.expect);
  CHECK(*n.expect == TypeErrorKind::NoRule);
  CHECK_FALSE(n.isPositive());
  CHECK_FALSE(n.type);
  CorpusEntry s = parseCorpusEntry("sigma: on\nctx:\nN : *\n\nterm:\nSig x:N. N\n");
  CHECK(s.sigma);
  CHECK_FALSE(s.isCoreCC());
  CHECK(s.spec().sigma);
}

TEST_CASE("malformed corpus entries are rejected") {
  CHECK_THROWS(parseCorpusEntry("ctx:\nA : *\n"));
  CHECK_THROWS(parseCorpusEntry("junk\nctx:\n\nterm:\nx\n"));
  CHECK_THROWS(parseCorpusEntry("expect: Nope\nctx:\n\nterm:\nx\n"));
  CHECK_THROWS(parseCorpusEntry("sigma: maybe\nctx:\n\nterm:\nx\n"));
  CHECK_THROWS(parseCorpusEntry("ctx:\n\nterm:\nx\n\nterm:\ny\n"));
  CHECK_THROWS_AS(parseCorpusEntry("ctx:\nA *\n\nterm:\nx\n"), ParseError);
  CHECK_THROWS(loadCorpusEntry("/nonexistent/entry"));
}

TEST_CASE("rendered entries parse back") {
  for (const auto& e : loadCorpus(PTS_CORPUS_DIR)) {
    INFO(e.name);
    CorpusEntry back = parseCorpusEntry(renderCorpusEntry(e), e.name);
    CHECK(back.system == e.system);
    CHECK(back.sigma == e.sigma);
    CHECK(back.expect == e.expect);
    CHECK(printContext(back.ctx) == printContext(e.ctx));
    CHECK(alphaEq(back.term, e.term));
    CHECK(back.type.has_value() == e.type.has_value());
    if (e.type) CHECK(alphaEq(*back.type, *e.type));
  }
}

TEST_CASE("loadCorpus reads a directory in name order") {
  auto dir = std::filesystem::temp_directory_path() / "pts_corpus_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "b") << "ctx:\n\nterm:\n*\n";
  std::ofstream(dir / "a") << "ctx:\n\nterm:\n*\n\ntype:\n#\n";
  auto c = loadCorpus(dir.string());
  REQUIRE(c.size() == 2);
  CHECK(c[0].name == "a");
  CHECK(c[1].name == "b");
  std::filesystem::remove_all(dir);

  auto all = loadCorpus(PTS_CORPUS_DIR);
  CHECK(all.size() >= 50);
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].name < all[i].name);
}
