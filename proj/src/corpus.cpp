#include "pts/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "pts/parse.hpp"

namespace pts {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const char* const kSections[] = {"ctx", "term", "type", "system", "sigma", "expect"};

bool isHeader(const std::string& line, std::string& key, std::string& inlineValue) {
  auto colon = line.find(':');
  if (colon == std::string::npos) return false;
  std::string k = trim(line.substr(0, colon));
  for (const char* s : kSections) {
    if (k == s) {
      key = k;
      inlineValue = trim(line.substr(colon + 1));
      return true;
    }
  }
  return false;
}

}  // namespace

CorpusEntry parseCorpusEntry(const std::string& text, const std::string& name) {
  std::map<std::string, std::string> sections;
  std::string current;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string key, value;
    if (isHeader(line, key, value)) {
      bool option = key == "system" || key == "sigma" || key == "expect";
      // Inside ctx, `system : T` is a binding.
      bool header = option ? current != "ctx" : value.empty();
      if (header) {
        current = key;
        if (sections.count(key) > 0) throw std::runtime_error(name + ": duplicate section '" + key + "'");
        sections[key] = value;
        continue;
      }
    }
    if (current.empty()) {
      if (trim(line).empty() || trim(line).front() == '#') continue;
      throw std::runtime_error(name + ": text before the first section");
    }
    sections[current] += (sections[current].empty() ? "" : "\n") + line;
  }

  CorpusEntry e;
  e.name = name;
  if (auto it = sections.find("system"); it != sections.end()) e.system = trim(it->second);
  if (auto it = sections.find("sigma"); it != sections.end()) {
    std::string v = trim(it->second);
    if (v == "on" || v == "true" || v == "yes") {
      e.sigma = true;
    } else if (v != "off" && v != "false" && v != "no") {
      throw std::runtime_error(name + ": bad sigma value '" + v + "'");
    }
  }
  if (auto it = sections.find("expect"); it != sections.end()) {
    auto k = parseTypeErrorKind(trim(it->second));
    if (!k) throw std::runtime_error(name + ": unknown error kind '" + trim(it->second) + "'");
    e.expect = k;
  }
  ParseOptions opts;
  opts.sigma = e.sigma;
  auto term = sections.find("term");
  if (term == sections.end() || trim(term->second).empty()) {
    throw std::runtime_error(name + ": missing term section");
  }
  if (auto it = sections.find("ctx"); it != sections.end()) e.ctx = parseContext(it->second, opts);
  e.term = parseExpr(term->second, opts);
  if (auto it = sections.find("type"); it != sections.end() && !trim(it->second).empty()) {
    e.type = parseExpr(it->second, opts);
  }
  return e;
}

CorpusEntry loadCorpusEntry(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parseCorpusEntry(buf.str(), std::filesystem::path(path).filename().string());
}

std::vector<CorpusEntry> loadCorpus(const std::string& dir) {
  std::vector<std::string> files;
  for (const auto& ent : std::filesystem::directory_iterator(dir)) {
    if (ent.is_regular_file()) files.push_back(ent.path().string());
  }
  std::sort(files.begin(), files.end());
  std::vector<CorpusEntry> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back(loadCorpusEntry(f));
  return out;
}

std::string renderCorpusEntry(const CorpusEntry& e) {
  std::string out;
  if (e.system != "cc") out += "system: " + e.system + "\n";
  if (e.sigma) out += "sigma: on\n";
  if (e.expect) out += std::string("expect: ") + typeErrorKindName(*e.expect) + "\n";
  out += "ctx:\n" + printContext(e.ctx) + "\nterm:\n" + printExpr(e.term) + "\n";
  if (e.type) out += "\ntype:\n" + printExpr(*e.type) + "\n";
  return out;
}

}  // namespace pts
