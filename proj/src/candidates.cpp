#include "pdlg/candidates.hpp"

#include <fstream>
#include <set>

#include "pdlg/error.hpp"
#include "pdlg/templates.hpp"

namespace pdlg {

int CandidateSet::id_of(const std::string& text) const {
  auto it = index.find(text);
  if (it == index.end())
    throw CorpusError("candidate missing from set: " + text);
  return it->second;
}

CandidateSet build_candidate_set(const KnowledgeBase& kb) {
  const KbConfig& c = kb.config;
  std::set<std::string> texts;

  // slotless templates; the anything-else template is renderable but never
  // emitted by any task flow, so it stays out of the closure
  const BotTemplate slotless[] = {
      BotTemplate::greet,      BotTemplate::on_it,     BotTemplate::ask_cuisine,
      BotTemplate::ask_location, BotTemplate::ask_price, BotTemplate::ask_party,
      BotTemplate::ask_update, BotTemplate::searching, BotTemplate::find_another,
      BotTemplate::reserve,    BotTemplate::welcome};
  for (BotTemplate t : slotless)
    for (int s = 0; s < kStyleCount; ++s)
      texts.insert(render_bot_utterance(t, s, {}));

  for (int half = 0; half < 2; ++half) {
    for (int cu : c.half_cuisines(half))
      for (int lo : c.half_locations(half))
        for (std::size_t pr = 0; pr < c.prices.size(); ++pr)
          for (std::size_t pa = 0; pa < c.parties.size(); ++pa)
            texts.insert(render_bot_utterance(
                BotTemplate::api_call, 0,
                {{"cuisine", c.cuisines[cu]},
                 {"location", c.locations[lo]},
                 {"party", c.parties[pa]},
                 {"price", c.prices[pr]}}));

    for (const auto& r : kb.half(half)) {
      for (int s = 0; s < kStyleCount; ++s)
        texts.insert(render_bot_utterance(BotTemplate::propose, s,
                                          {{"restaurant", r.name}}));
      // info answers: one here-is surface per age bracket (male/female styles
      // share text within a bracket); contact payload follows the age rule,
      // directions payload the price rule
      bool cheap = c.prices[r.price] == "cheap";
      std::string dir = r.name + "_address " + r.name +
                        (cheap ? "_public_transport" : "_parking");
      const int bracket_style[] = {0, 2, 4};
      for (int b = 0; b < 3; ++b) {
        int s = bracket_style[b];
        std::string contact =
            b == 0 ? r.name + "_social_media" : r.name + "_phone";
        texts.insert(render_bot_utterance(BotTemplate::here_is, s, {{"info", contact}}));
        texts.insert(render_bot_utterance(BotTemplate::here_is, s, {{"info", dir}}));
      }
    }
  }

  CandidateSet set;
  set.texts.assign(texts.begin(), texts.end());
  for (int i = 0; i < static_cast<int>(set.texts.size()); ++i)
    set.index.emplace(set.texts[i], i);
  return set;
}

void save_candidates(const CandidateSet& set, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CorpusError("cannot open " + path + " for writing");
  for (const auto& t : set.texts) out << t << "\n";
}

CandidateSet load_candidates(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open " + path);
  CandidateSet set;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) throw CorpusError("empty candidate line in " + path);
    if (!set.index.emplace(line, static_cast<int>(set.texts.size())).second)
      throw CorpusError("duplicate candidate in " + path + ": " + line);
    set.texts.push_back(line);
  }
  return set;
}

}  // namespace pdlg
