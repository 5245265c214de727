#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace pts {

struct ReportLine {
  bool pass;
  std::string check;
  std::string judgement;
};

/// Check results, rendered one per line as `PASS|FAIL <check> <judgement>`.
struct Report {
  std::vector<ReportLine> lines;

  void pass(std::string check, std::string judgement) {
    lines.push_back({true, std::move(check), std::move(judgement)});
  }
  void fail(std::string check, std::string judgement) {
    lines.push_back({false, std::move(check), std::move(judgement)});
  }
  void add(bool ok, std::string check, std::string judgement) {
    lines.push_back({ok, std::move(check), std::move(judgement)});
  }
  void append(const Report& other) {
    lines.insert(lines.end(), other.lines.begin(), other.lines.end());
  }

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& l : lines) n += l.pass ? 0 : 1;
    return n;
  }
  bool ok() const { return failures() == 0; }

  std::string render() const {
    std::string out;
    for (const auto& l : lines) {
      out += l.pass ? "PASS " : "FAIL ";
      out += l.check + " " + l.judgement + "\n";
    }
    return out;
  }
};

}  // namespace pts
