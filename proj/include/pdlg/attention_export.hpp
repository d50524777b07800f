#pragma once

#include <string>
#include <vector>

#include "pdlg/dialog.hpp"
#include "pdlg/memnn.hpp"

namespace pdlg {

// Per-hop attention weights over the memories visible to one turn, plus the
// model's ranking outcome for that turn.  Rows follow memory order: profile
// block first (split variant), then the visible conversation window oldest
// first.
struct AttentionExport {
  std::vector<std::string> blocks;   // "profile" or "conversation" per row
  std::vector<std::string> entries;  // display text per row
  std::vector<std::vector<double>> weights;  // [row][hop]
  int hops = 0;
  std::string query;
  std::string gold;
  std::string predicted;
};

AttentionExport trace_attention(const MemNNModel& model, const Dialog& d,
                                const Vocabulary& vocab,
                                const CandidateSet& cands,
                                const KbConfig& config, int turn);

void write_attention_csv(const AttentionExport& ex, const std::string& path);
void write_attention_text(const AttentionExport& ex, const std::string& path);

}  // namespace pdlg
