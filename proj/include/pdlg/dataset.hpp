#pragma once

#include <span>
#include <string>
#include <vector>

#include "pdlg/candidates.hpp"
#include "pdlg/dialog.hpp"
#include "pdlg/kb.hpp"
#include "pdlg/vocab.hpp"

namespace pdlg {

// One dialog tokenized for the rankers.  Conversation memory entries carry a
// leading $u/$b speaker-tag token; split-variant profile attributes are
// stored as single-token entries without tags.  The i-th example ranks the
// bot side of the i-th exchange given everything before it.
struct TokDialog {
  Profile profile;
  std::vector<int> profile_entry;              // "$u <profile line>"
  std::vector<std::vector<int>> profile_attrs; // one entry per attribute
  std::vector<std::vector<int>> entries;       // conversation, oldest first

  struct Example {
    int context_entries = 0;  // prefix of `entries` visible to this turn
    std::vector<int> query;   // user utterance tokens, untagged
    int gold = -1;            // candidate id
  };
  std::vector<Example> examples;
};

TokDialog tokenize_dialog(const Dialog& d, const Vocabulary& vocab,
                          const CandidateSet& cands, const KbConfig& config);

std::vector<TokDialog> load_tokenized(const std::string& path,
                                      const Vocabulary& vocab,
                                      const CandidateSet& cands,
                                      const KbConfig& config);

// candidate token lists in CSR form
struct CandTokens {
  std::vector<int> offsets;  // size C+1
  std::vector<int> ids;
  std::span<const int> get(int c) const {
    return {ids.data() + offsets[c],
            static_cast<std::size_t>(offsets[c + 1] - offsets[c])};
  }
  int count() const { return static_cast<int>(offsets.size()) - 1; }
};

CandTokens tokenize_candidates(const CandidateSet& cands, const Vocabulary& vocab);

// supervised-embedding input: profile + all prior turns + query when
// use_history, otherwise the query alone (untagged everywhere)
std::vector<int> se_encode_input(const TokDialog& td, int example_idx,
                                 bool use_history);

}  // namespace pdlg
