#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "helpkit/constructions.hpp"

namespace testing_corpus {

inline const std::vector<helpkit::CorpusEntry>& corpus64() {
  static const std::vector<helpkit::CorpusEntry> corpus = helpkit::build_corpus(64);
  return corpus;
}

inline const helpkit::CorpusEntry& entry(const std::string& id) {
  for (const auto& e : corpus64())
    if (e.id == id) return e;
  throw std::out_of_range("no corpus entry " + id);
}

}  // namespace testing_corpus
