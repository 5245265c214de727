#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "pts/parse.hpp"

using namespace pts;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Run cli(const std::vector<std::string>& args) {
  std::string cmd = PTS_CLI_PATH;
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string firstLine(const std::string& s) { return s.substr(0, s.find('\n')); }

std::string writeTemp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("cli: infer, normalize and rule errors") {
  Run a = cli({"infer", "--system", "cc", "\\A:*. \\x:A. x"});
  CHECK(a.code == 0);
  CHECK(alphaEq(parseExpr(firstLine(a.out)), parseExpr("(A:*) -> (x:A) -> A")));

  Run b = cli({"--system", "fomega", "--bind", "N : *", "infer", "(x:N) -> *"});
  CHECK(b.code == 1);

  Run c = cli({"normalize", "((\\x:*. x) y)"});
  CHECK(c.code == 0);
  CHECK(firstLine(c.out) == "y");
}

TEST_CASE("cli: exit codes") {
  CHECK(cli({"normalize", "\\x:"}).code == 2);
  CHECK(cli({"bogus"}).code == 2);
  CHECK(cli({"--system", "nosuch", "infer", "*"}).code == 2);
  CHECK(cli({"check", "*", "*"}).code == 1);
  CHECK(cli({"check", "*", "#"}).code == 0);
  Run t = cli({"--fuel", "5", "trace", "(\\x:*. x x) (\\x:*. x x)"});
  CHECK(t.code == 3);
  CHECK(t.out.find("truncated after 5 steps") != std::string::npos);
  CHECK(cli({"--fuel", "5", "normalize", "(\\x:*. x x) (\\x:*. x x)"}).code == 3);
}

TEST_CASE("cli: contexts from files and bindings") {
  std::string ctx = writeTemp("pts_cli_ctx", "A : *\nx : A\n");
  CHECK(cli({"check", ctx, "x", "A"}).code == 0);
  CHECK(cli({"--ctx", ctx, "check", "x", "A"}).code == 0);
  CHECK(cli({"--bind", "A : *", "--bind", "x : A", "check", "x", "A"}).code == 0);
  Run c = cli({"classify", ctx, "A"});
  CHECK(c.code == 0);
  CHECK(c.out.find("type") != std::string::npos);
  CHECK(cli({"--ctx", "/nonexistent/ctx", "infer", "*"}).code == 2);
}

TEST_CASE("cli: machine format is one JSON record per line") {
  Run m = cli({"--format", "machine", "infer", "\\A:*. \\x:A. x"});
  REQUIRE(m.code == 0);
  json j = json::parse(firstLine(m.out));
  CHECK(j["ok"] == true);
  CHECK(alphaEq(parseExpr(j["type"].get<std::string>()), parseExpr("(A:*) -> A -> A")));

  Run e = cli({"--format", "machine", "check", "*", "*"});
  CHECK(e.code == 1);
  json je = json::parse(firstLine(e.out));
  CHECK(je["ok"] == false);
  CHECK(je["error"] == "Mismatch");
}

TEST_CASE("cli: text and machine formats agree on the verify report") {
  Run text = cli({"verify", PTS_CORPUS_DIR, "--generated", "60"});
  Run machine = cli({"--format", "machine", "verify", PTS_CORPUS_DIR, "--generated", "60"});
  CHECK(text.code == 0);
  CHECK(machine.code == 0);
  std::size_t textPass = 0, textFail = 0, machinePass = 0, machineFail = 0;
  std::istringstream ts(text.out), ms(machine.out);
  for (std::string line; std::getline(ts, line);) {
    textPass += line.rfind("PASS ", 0) == 0;
    textFail += line.rfind("FAIL ", 0) == 0;
  }
  for (std::string line; std::getline(ms, line);) {
    json j = json::parse(line);
    if (j.contains("summary")) continue;
    (j["pass"] == true ? machinePass : machineFail)++;
  }
  CHECK(textPass > 0);
  CHECK(textPass == machinePass);
  CHECK(textFail == machineFail);
  CHECK(textFail == 0);
}

TEST_CASE("cli: translate output re-checks in F-omega") {
  std::vector<std::pair<std::string, std::string>> cases{
      {"", "\\A:*. \\x:A. x"}, {"A : *\nx : A\n", "x"}, {"F : * -> *\nA : *\n", "F A"}, {"", "*"}};
  for (const auto& [ctxText, term] : cases) {
    INFO(term);
    std::vector<std::string> args{"--format", "machine", "translate"};
    if (!ctxText.empty()) args.push_back(writeTemp("pts_cli_tctx", ctxText));
    args.push_back(term);
    Run r = cli(args);
    REQUIRE(r.code == 0);
    json j = json::parse(firstLine(r.out));
    std::string fctx;
    for (const auto& b : j["ctx"]) fctx += b["name"].get<std::string>() + " : " + b["type"].get<std::string>() + "\n";
    std::string file = writeTemp("pts_cli_fctx", fctx);
    Run c = cli({"--system", "fomega", "--reserved", "check", file, j["term"].get<std::string>(),
                 j["type"].get<std::string>()});
    CHECK(c.code == 0);
  }
  Run text = cli({"translate", "\\A:*. \\x:A. x"});
  CHECK(text.code == 0);
  CHECK(text.out.find("ctx:\n") == 0);
  CHECK(text.out.find("PASS term") != std::string::npos);
}

TEST_CASE("cli: label and erase") {
  Run l = cli({"--bind", "N : *", "--bind", "M : N", "label", "(\\A:*. \\x:A. x) N M"});
  REQUIRE(l.code == 0);
  std::string labeled = firstLine(l.out);
  CHECK(labeled.find("@[") != std::string::npos);
  Run e = cli({"erase", labeled});
  CHECK(e.code == 0);
  CHECK(alphaEq(parseExpr(firstLine(e.out)), parseExpr("(\\A:*. \\x:A. x) N M")));
  CHECK(cli({"label", "x"}).code == 1);
}
