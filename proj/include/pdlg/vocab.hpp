#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "pdlg/candidates.hpp"
#include "pdlg/kb.hpp"

namespace pdlg {

inline const char* kUserTag = "$u";
inline const char* kBotTag = "$b";

struct Vocabulary {
  std::vector<std::string> tokens;  // id -> token, lexicographic
  std::unordered_map<std::string, int> ids;

  int id_of(const std::string& tok) const;  // throws CorpusError on unknown
  std::vector<int> tokenize(const std::string& text) const;
  void tokenize_into(const std::string& text, std::vector<int>& out) const;
  std::uint64_t hash() const;  // FNV-1a over "token\n" stream
  std::size_t size() const { return tokens.size(); }
};

// Closure over candidate texts, KB facts of both halves, the rendered user
// pattern surfaces over the full lexicon, profile attribute tokens, dish
// tokens, the silence token, and the $u/$b speaker tags.
Vocabulary build_vocabulary(const KnowledgeBase& kb, const CandidateSet& cands);

void save_vocabulary(const Vocabulary& v, const std::string& path);
Vocabulary load_vocabulary(const std::string& path);

}  // namespace pdlg
