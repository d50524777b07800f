#include "pdlg/attention_export.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>

#include "pdlg/error.hpp"
#include "pdlg/evaluate.hpp"
#include "pdlg/kernels.hpp"

namespace pdlg {

AttentionExport trace_attention(const MemNNModel& model, const Dialog& d,
                                const Vocabulary& vocab,
                                const CandidateSet& cands,
                                const KbConfig& config, int turn) {
  TokDialog td = tokenize_dialog(d, vocab, cands, config);
  if (turn < 0 || turn >= static_cast<int>(td.examples.size()))
    throw CorpusError("turn index " + std::to_string(turn) +
                      " out of range (dialog has " +
                      std::to_string(td.examples.size()) + " exchanges)");
  const TokDialog::Example& ex = td.examples[turn];

  // display text per conversation entry, aligned with td.entries
  std::vector<std::string> display;
  for (std::size_t i = 1; i < d.lines.size(); ++i) {
    const DialogLine& line = d.lines[i];
    if (line.kind == LineKind::fact) {
      display.push_back(std::string(kUserTag) + " " + line.text);
    } else {
      display.push_back(std::string(kUserTag) + " " + line.user);
      display.push_back(std::string(kBotTag) + " " + line.bot);
    }
  }

  MemView mem =
      build_memories(td, ex.context_entries, model.split, model.hp.max_memories);
  MemNNForward f;
  memnn_forward(model, mem, ex.query, f);

  AttentionExport out;
  out.hops = model.hp.hops;
  int exchange = 0;
  for (const DialogLine& line : d.lines)
    if (line.kind == LineKind::exchange && exchange++ == turn) {
      out.query = line.user;
      break;
    }
  out.gold = cands.texts[ex.gold];

  std::vector<float> cmat = candidate_matrix(model.A, tokenize_candidates(cands, vocab));
  std::vector<float> q = to_f32(f.u.back());
  std::vector<ScoreHit> hit =
      score_argmax(q.data(), 1, cmat.data(), static_cast<int>(cands.texts.size()),
                   model.dim());
  out.predicted = cands.texts[hit[0].index];

  if (model.split) {
    const std::vector<std::string> attrs = split_tokens(d.lines[0].text);
    for (std::size_t h = 0; h < mem.prof.size(); ++h) {
      out.blocks.push_back("profile");
      out.entries.push_back(attrs[h]);
      std::vector<double> w(out.hops);
      for (int k = 0; k < out.hops; ++k) w[k] = f.q[k][h];
      out.weights.push_back(std::move(w));
    }
  }
  int first = ex.context_entries - static_cast<int>(mem.conv.size()) +
              (model.split ? 0 : 1);
  for (std::size_t i = 0; i < mem.conv.size(); ++i) {
    out.blocks.push_back("conversation");
    if (!model.split && i == 0) {
      out.entries.push_back(std::string(kUserTag) + " " + d.lines[0].text);
    } else {
      out.entries.push_back(display[first + static_cast<int>(i) -
                                    (model.split ? 0 : 1)]);
    }
    std::vector<double> w(out.hops);
    for (int k = 0; k < out.hops; ++k) w[k] = f.p[k][i];
    out.weights.push_back(std::move(w));
  }
  return out;
}

void write_attention_csv(const AttentionExport& ex, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw CorpusError("cannot write " + path);
  out << "block,entry";
  for (int k = 0; k < ex.hops; ++k) out << ",hop" << (k + 1);
  out << "\n";
  out << std::setprecision(9);
  for (std::size_t i = 0; i < ex.entries.size(); ++i) {
    out << ex.blocks[i] << "," << ex.entries[i];
    for (int k = 0; k < ex.hops; ++k) out << "," << ex.weights[i][k];
    out << "\n";
  }
}

void write_attention_text(const AttentionExport& ex, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw CorpusError("cannot write " + path);
  std::size_t width = 8;
  for (const std::string& e : ex.entries) width = std::max(width, e.size());
  width = std::min<std::size_t>(width, 60);

  out << "query:     " << ex.query << "\n";
  out << "gold:      " << ex.gold << "\n";
  out << "predicted: " << ex.predicted << "\n\n";
  out << std::left << std::setw(static_cast<int>(width) + 12) << "memory";
  for (int k = 0; k < ex.hops; ++k)
    out << std::right << std::setw(9) << ("hop" + std::to_string(k + 1));
  out << "\n";
  out << std::fixed << std::setprecision(4);
  for (std::size_t i = 0; i < ex.entries.size(); ++i) {
    std::string text = ex.entries[i];
    if (text.size() > width) text = text.substr(0, width - 3) + "...";
    if (ex.blocks[i] == "profile") text = "[profile] " + text;
    out << std::left << std::setw(static_cast<int>(width) + 12) << text;
    for (int k = 0; k < ex.hops; ++k)
      out << std::right << std::setw(9) << ex.weights[i][k];
    out << "\n";
  }
}

}  // namespace pdlg
