#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "pdlg/kb.hpp"

namespace pdlg {

struct CandidateSet {
  std::vector<std::string> texts;  // lexicographically sorted, deduplicated
  std::unordered_map<std::string, int> index;

  int id_of(const std::string& text) const;  // throws CorpusError if missing
  bool contains(const std::string& text) const {
    return index.find(text) != index.end();
  }
  std::size_t size() const { return texts.size(); }
};

// The deterministic closure of everything the generation rules can emit:
// every slotless template variant, every within-half api_call, every proposal
// over both halves, and every info answer consistent with the age/price
// rules.  A superset of the bot turns of any generated corpus by
// construction.
CandidateSet build_candidate_set(const KnowledgeBase& kb);

void save_candidates(const CandidateSet& set, const std::string& path);
CandidateSet load_candidates(const std::string& path);

}  // namespace pdlg
