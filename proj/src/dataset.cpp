#include "pdlg/dataset.hpp"

#include "pdlg/error.hpp"
#include "pdlg/oracle.hpp"

namespace pdlg {

TokDialog tokenize_dialog(const Dialog& d, const Vocabulary& vocab,
                          const CandidateSet& cands, const KbConfig& config) {
  if (d.lines.empty() || d.lines.front().kind != LineKind::profile)
    throw CorpusError("dialog does not start with a profile line");
  TokDialog td;
  const std::string& ptext = d.lines.front().text;
  td.profile = parse_profile_line(ptext, config);
  td.profile_entry.push_back(vocab.id_of(kUserTag));
  vocab.tokenize_into(ptext, td.profile_entry);
  for (const std::string& tok : split_tokens(ptext))
    td.profile_attrs.push_back({vocab.id_of(tok)});

  for (std::size_t i = 1; i < d.lines.size(); ++i) {
    const DialogLine& line = d.lines[i];
    if (line.kind == LineKind::profile)
      throw CorpusError("profile line in dialog body");
    if (line.kind == LineKind::fact) {
      std::vector<int> entry{vocab.id_of(kUserTag)};
      vocab.tokenize_into(line.text, entry);
      td.entries.push_back(std::move(entry));
      continue;
    }
    TokDialog::Example ex;
    ex.context_entries = static_cast<int>(td.entries.size());
    ex.query = vocab.tokenize(line.user);
    ex.gold = cands.id_of(line.bot);
    td.examples.push_back(std::move(ex));

    std::vector<int> ue{vocab.id_of(kUserTag)};
    vocab.tokenize_into(line.user, ue);
    td.entries.push_back(std::move(ue));
    std::vector<int> be{vocab.id_of(kBotTag)};
    vocab.tokenize_into(line.bot, be);
    td.entries.push_back(std::move(be));
  }
  return td;
}

std::vector<TokDialog> load_tokenized(const std::string& path,
                                      const Vocabulary& vocab,
                                      const CandidateSet& cands,
                                      const KbConfig& config) {
  std::vector<TokDialog> out;
  for_each_dialog(path, [&](const Dialog& d) {
    out.push_back(tokenize_dialog(d, vocab, cands, config));
  });
  return out;
}

CandTokens tokenize_candidates(const CandidateSet& cands, const Vocabulary& vocab) {
  CandTokens ct;
  ct.offsets.reserve(cands.texts.size() + 1);
  ct.offsets.push_back(0);
  for (const std::string& text : cands.texts) {
    vocab.tokenize_into(text, ct.ids);
    ct.offsets.push_back(static_cast<int>(ct.ids.size()));
  }
  return ct;
}

std::vector<int> se_encode_input(const TokDialog& td, int example_idx,
                                 bool use_history) {
  const TokDialog::Example& ex = td.examples.at(example_idx);
  std::vector<int> x;
  if (use_history) {
    x.insert(x.end(), td.profile_entry.begin() + 1, td.profile_entry.end());
    for (int i = 0; i < ex.context_entries; ++i) {
      const std::vector<int>& e = td.entries[i];
      x.insert(x.end(), e.begin() + 1, e.end());  // drop the speaker tag
    }
  }
  x.insert(x.end(), ex.query.begin(), ex.query.end());
  return x;
}

}  // namespace pdlg
