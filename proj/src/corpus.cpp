#include "pdlg/corpus.hpp"

#include <filesystem>
#include <memory>

#include "pdlg/error.hpp"

namespace pdlg {

namespace {

std::size_t split_size(int task, bool small_variant) {
  if (small_variant) return 1000;
  return (task == 3 || task == 5) ? 12000 : 6000;
}

void write_split(const KnowledgeBase& kb, int task, const std::string& split,
                 int half, std::size_t count, Rng split_rng, bool all_attrs,
                 const std::string& path, GenReport& report) {
  TaskId tid = task_from_int(task);
  int combos = profile_combos(tid);
  CorpusWriter writer(path);
  for (std::size_t scenario = 0; writer.count() < count; ++scenario) {
    Rng sc_rng = split_rng.child(scenario);
    Scenario sc = draw_scenario(tid, kb, half, sc_rng.child("scenario"));
    for (int combo = 0; combo < combos && writer.count() < count; ++combo) {
      Profile p = combo_profile(kb, sc, combo);
      writer.add(render_dialog(kb, sc, p, sc_rng.child("render").child(combo),
                               all_attrs));
    }
  }
  report.files.push_back({std::filesystem::path(path).filename().string(),
                          writer.count()});
}

// PT5-style dialogs restricted to one (gender, age); diet alternates per
// scenario rendering so each profile file still covers both diets
void write_profile_split(const KnowledgeBase& kb, Gender g, Age a,
                         const std::string& split, std::size_t count,
                         Rng split_rng, const std::string& path,
                         GenReport& report, CorpusWriter* union_writer) {
  CorpusWriter writer(path);
  for (std::size_t scenario = 0; writer.count() < count; ++scenario) {
    Rng sc_rng = split_rng.child(scenario);
    Scenario sc = draw_scenario(TaskId::pt5, kb, 0, sc_rng.child("scenario"));
    for (int diet = 0; diet < 2 && writer.count() < count; ++diet) {
      Profile p;
      p.gender = g;
      p.age = a;
      p.diet = static_cast<Diet>(diet);
      const Restaurant& target = kb.half(0)[sc.target];
      p.favorite = kb.config.dishes.at(kb.config.cuisines[target.cuisine])
                       [sc.favorite_idx];
      Dialog d = render_dialog(kb, sc, p, sc_rng.child("render").child(diet));
      writer.add(d);
      if (union_writer) union_writer->add(d);
    }
  }
  report.files.push_back({std::filesystem::path(path).filename().string(),
                          writer.count()});
}

}  // namespace

std::string corpus_file_name(int task, const std::string& split) {
  return "personalized-dialog-task" + std::to_string(task) + "-" + split +
         ".txt";
}

std::string multitask_file_name(Gender g, Age a, const std::string& split) {
  return std::string("personalized-dialog-mt-") + gender_token(g) + "-" +
         age_token(a) + "-" + split + ".txt";
}

GenReport generate_corpus(const GenOptions& opts) {
  if (opts.out_dir.empty()) throw CorpusError("generate: empty output directory");
  opts.config.validate();
  std::filesystem::create_directories(opts.out_dir);
  auto in_dir = [&](const std::string& name) {
    return (std::filesystem::path(opts.out_dir) / name).string();
  };

  Rng root(opts.seed);
  KnowledgeBase kb = generate_kb(opts.config, root.child("kb").origin());
  GenReport report;
  report.kb_half_size = kb.half(0).size();
  write_kb_file(kb, 0, in_dir("kb-A.txt"));
  write_kb_file(kb, 1, in_dir("kb-B.txt"));

  CandidateSet cands = build_candidate_set(kb);
  save_candidates(cands, in_dir("candidates.txt"));
  report.candidate_count = cands.size();

  Vocabulary vocab = build_vocabulary(kb, cands);
  save_vocabulary(vocab, in_dir("vocabulary.txt"));
  report.vocab_size = vocab.size();
  report.vocab_hash = vocab.hash();

  for (int task : opts.tasks) {
    Rng task_rng = root.child("task" + std::to_string(task));
    for (int s = 0; s < 4; ++s) {
      const std::string split = kSplitNames[s];
      int half = split == "tst-OOV" ? 1 : 0;
      write_split(kb, task, split, half, split_size(task, opts.small_variant),
                  task_rng.child(split), opts.all_attributes,
                  in_dir(corpus_file_name(task, split)), report);
    }
  }

  if (opts.multitask) {
    Rng mt_rng = root.child("multitask");
    for (const char* split : {"trn", "dev", "tst"}) {
      bool make_union = std::string(split) != "tst";
      std::unique_ptr<CorpusWriter> union_writer;
      if (make_union)
        union_writer = std::make_unique<CorpusWriter>(
            in_dir(std::string("personalized-dialog-mt-all-") + split + ".txt"));
      for (int pid = 0; pid < 6; ++pid) {
        Gender g = static_cast<Gender>(pid % 2);
        Age a = static_cast<Age>(pid / 2);
        write_profile_split(kb, g, a, split, 1000,
                            mt_rng.child(pid).child(split),
                            in_dir(multitask_file_name(g, a, split)), report,
                            union_writer.get());
      }
      if (union_writer)
        report.files.push_back(
            {std::string("personalized-dialog-mt-all-") + split + ".txt",
             union_writer->count()});
    }
  }
  return report;
}

}  // namespace pdlg
