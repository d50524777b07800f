#include "pdlg/vocab.hpp"

#include <fstream>
#include <set>

#include "pdlg/error.hpp"
#include "pdlg/patterns.hpp"
#include "pdlg/rng.hpp"

namespace pdlg {

int Vocabulary::id_of(const std::string& tok) const {
  auto it = ids.find(tok);
  if (it == ids.end()) throw CorpusError("unknown token: " + tok);
  return it->second;
}

std::vector<int> Vocabulary::tokenize(const std::string& text) const {
  std::vector<int> out;
  tokenize_into(text, out);
  return out;
}

void Vocabulary::tokenize_into(const std::string& text,
                               std::vector<int>& out) const {
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && text[i] == ' ') ++i;
    std::size_t j = i;
    while (j < n && text[j] != ' ') ++j;
    if (j > i) out.push_back(id_of(text.substr(i, j - i)));
    i = j;
  }
}

std::uint64_t Vocabulary::hash() const {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto feed = [&h](const char* s, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) {
      h ^= static_cast<unsigned char>(s[i]);
      h *= 0x100000001B3ULL;
    }
  };
  for (const auto& t : tokens) {
    feed(t.data(), t.size());
    feed("\n", 1);
  }
  return h;
}

Vocabulary build_vocabulary(const KnowledgeBase& kb, const CandidateSet& cands) {
  const KbConfig& c = kb.config;
  std::set<std::string> toks;
  auto add_text = [&toks](const std::string& text) {
    for (auto& t : split_tokens(text)) toks.insert(std::move(t));
  };

  for (const auto& t : cands.texts) add_text(t);
  for (int half = 0; half < 2; ++half)
    for (const auto& r : kb.half(half))
      for (const auto& f : kb_facts(c, r)) {
        toks.insert(f.name);
        toks.insert(f.rel);
        toks.insert(f.value);
      }

  // user pattern closure over the full value lexicon
  for (int g = 0; g < greet_forms(); ++g) add_text(render_greet(g));
  for (int b = 0; b < request_bases(); ++b) add_text(render_request(c, b, {}));
  for (int f = 0; f < kFieldCount; ++f) {
    Field fd = static_cast<Field>(f);
    int nv = fd == Field::cuisine  ? static_cast<int>(c.cuisines.size())
           : fd == Field::location ? static_cast<int>(c.locations.size())
           : fd == Field::party    ? static_cast<int>(c.parties.size())
                                   : static_cast<int>(c.prices.size());
    for (int v = 0; v < nv; ++v) {
      for (int form = 0; form < field_phrase_forms(fd); ++form)
        add_text(render_field_phrase(c, {fd, v, form}));
      for (int form = 0; form < answer_forms(fd); ++form)
        add_text(render_answer(c, fd, v, form));
    }
  }
  for (int u = 0; u < update_forms(); ++u)
    add_text(render_update(c, u, {Field::cuisine, 0, 0}));
  for (int r = 0; r < reject_forms(); ++r) add_text(render_reject(r));
  for (int a = 0; a < accept_forms(); ++a) add_text(render_accept(a));
  for (int b = 0; b < book_bases(); ++b) add_text(render_book(b, "resto_x"));
  toks.erase("resto_x");
  for (int f = 0; f < ask_contact_forms(); ++f) add_text(render_ask_contact(f));
  for (int f = 0; f < ask_directions_forms(); ++f) add_text(render_ask_directions(f));
  for (int f = 0; f < thanks_forms(); ++f) add_text(render_thanks(f));
  for (int f = 0; f < no_forms(); ++f) add_text(render_no(f));

  // profile attributes and every dish token (favorites cover all dishes)
  for (const char* t : {"male", "female", "young", "middle-aged", "elderly",
                        "veg", "non-veg"})
    toks.insert(t);
  for (const auto& [cuisine, dishes] : c.dishes)
    for (const auto& d : dishes) toks.insert(d);

  toks.insert(kSilenceToken);
  toks.insert(kUserTag);
  toks.insert(kBotTag);

  Vocabulary v;
  v.tokens.assign(toks.begin(), toks.end());
  for (int i = 0; i < static_cast<int>(v.tokens.size()); ++i)
    v.ids.emplace(v.tokens[i], i);
  return v;
}

void save_vocabulary(const Vocabulary& v, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CorpusError("cannot open " + path + " for writing");
  for (const auto& t : v.tokens) out << t << "\n";
}

Vocabulary load_vocabulary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open " + path);
  Vocabulary v;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) throw CorpusError("empty vocabulary line in " + path);
    if (!v.ids.emplace(line, static_cast<int>(v.tokens.size())).second)
      throw CorpusError("duplicate vocabulary token in " + path + ": " + line);
    v.tokens.push_back(line);
  }
  return v;
}

}  // namespace pdlg
