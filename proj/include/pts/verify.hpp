#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pts/corpus.hpp"
#include "pts/generate.hpp"
#include "pts/reduction.hpp"
#include "pts/report.hpp"

namespace pts {

struct VerifyOptions {
  std::size_t fuel = kDefaultFuel;
  /// Reachability depth for simulation and confluence.
  std::size_t depth = 12;
  std::size_t preservationDepth = 3;
  std::size_t keyRedexDepth = 8;
  std::size_t generated = 500;
  std::size_t substInstances = 50;
  std::size_t maxSize = 25;
  std::uint64_t seed = 20240601;
};

Report verifyTyping(const std::vector<CorpusEntry>& corpus, std::size_t fuel = kDefaultFuel);
Report verifyPreservation(const std::vector<CorpusEntry>& corpus, std::size_t depth,
                          std::size_t fuel = kDefaultFuel);
Report verifyTrichotomy(const std::vector<CorpusEntry>& corpus, std::size_t fuel = kDefaultFuel);
Report verifyTranslation(const std::vector<CorpusEntry>& corpus, std::size_t fuel = kDefaultFuel);
Report verifySimulation(const std::vector<CorpusEntry>& corpus, std::size_t depth,
                        std::size_t fuel = kDefaultFuel);
Report verifyLabeled(const std::vector<CorpusEntry>& corpus, std::size_t fuel = kDefaultFuel);
Report verifyNormalization(const std::vector<CorpusEntry>& corpus, std::size_t fuel = kDefaultFuel);

Report verifyConfluence(const std::vector<Judgement>& terms, std::size_t depth);
/// Key-redex laws on every subterm of the given terms.
Report verifyKeyRedexes(const std::vector<Judgement>& terms, std::size_t depth);
Report verifySubstitution(const std::vector<SubstInstance>& instances,
                          std::size_t fuel = kDefaultFuel);

struct Section {
  std::string name;
  Report report;
  double seconds = 0;
};

/// Runs every report: corpus ones on `corpus`, generated ones on fresh
/// terms from `options.seed`.
std::vector<Section> verifyAll(const std::vector<CorpusEntry>& corpus, const VerifyOptions& options);

}  // namespace pts
