#pragma once

#include <string>
#include <vector>

#include "pdlg/candidates.hpp"
#include "pdlg/kb.hpp"
#include "pdlg/simulator.hpp"
#include "pdlg/vocab.hpp"

namespace pdlg {

inline const char* kSplitNames[4] = {"trn", "dev", "tst", "tst-OOV"};

std::string corpus_file_name(int task, const std::string& split);

struct GenOptions {
  std::uint64_t seed = 1;
  bool small_variant = false;
  std::vector<int> tasks = {1, 2, 3, 4, 5};
  std::string out_dir;
  KbConfig config = KbConfig::defaults();
  bool all_attributes = false;  // force 4-attribute profile lines everywhere

  // per-profile corpora for the multi-task experiment: for each (gender, age)
  // pair, PT5-style trn/dev/tst files restricted to that profile
  bool multitask = false;
};

struct FileReport {
  std::string name;
  std::size_t dialogs = 0;
};

struct GenReport {
  std::vector<FileReport> files;
  std::size_t candidate_count = 0;
  std::size_t vocab_size = 0;
  std::uint64_t vocab_hash = 0;
  std::size_t kb_half_size = 0;
};

// Writes per-task split files, kb-A.txt / kb-B.txt, candidates.txt and
// vocabulary.txt into out_dir.  Fully deterministic in (seed, config).
GenReport generate_corpus(const GenOptions& opts);

// file name of a multitask per-profile split, e.g.
// "personalized-dialog-mt-male-young-trn.txt"
std::string multitask_file_name(Gender g, Age a, const std::string& split);

}  // namespace pdlg
