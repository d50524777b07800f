#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pdlg/attention_export.hpp"
#include "pdlg/checkpoint.hpp"
#include "pdlg/corpus.hpp"
#include "pdlg/error.hpp"
#include "pdlg/evaluate.hpp"
#include "pdlg/trainer.hpp"

namespace fs = std::filesystem;
using namespace pdlg;
using nlohmann::json;

namespace {

std::string self_exe() {
  std::error_code ec;
  fs::path p = fs::read_symlink("/proc/self/exe", ec);
  if (ec) throw CorpusError("cannot resolve own executable path");
  return p.string();
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  out += "'";
  return out;
}

// run a child process, mapping its exit code onto our own error kinds
void run_child(const std::string& cmd) {
  int status = std::system(cmd.c_str());
  if (status < 0) throw CorpusError("failed to launch: " + cmd);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : 2;
  if (code == 3) throw TrainingError("child training run diverged: " + cmd);
  if (code != 0) throw CorpusError("child run failed (exit " +
                                   std::to_string(code) + "): " + cmd);
}

void print_metrics(const std::string& label, const EvalMetrics& m) {
  std::cout << label << " accuracy " << std::fixed << std::setprecision(2)
            << m.accuracy() << "  (" << m.correct << "/" << m.turns
            << " turns, " << m.dialogs << " dialogs, " << std::setprecision(1)
            << m.wall_seconds << "s)\n"
            << std::defaultfloat;
}

struct ProfileId {
  Gender gender;
  Age age;
};

std::vector<ProfileId> all_profiles() {
  std::vector<ProfileId> out;
  for (int a = 0; a < 3; ++a)
    for (int g = 0; g < 2; ++g)
      out.push_back({static_cast<Gender>(g), static_cast<Age>(a)});
  return out;
}

std::string profile_slug(const ProfileId& p) {
  return std::string(gender_token(p.gender)) + "-" + age_token(p.age);
}

int run_multitask(const std::string& data_dir, const std::string& out_dir,
                  std::uint64_t seed, const std::string& model, bool quiet) {
  fs::create_directories(out_dir);
  std::string exe = self_exe();
  std::vector<ProfileId> profiles = all_profiles();

  auto data_path = [&](const std::string& n) {
    return (fs::path(data_dir) / n).string();
  };

  // 6 profile-specific runs plus one multi-profile run, each an independent
  // training process
  struct Run {
    std::string name;
    std::vector<std::string> trn, dev, tst;
    std::string out;
  };
  std::vector<Run> runs;
  for (const ProfileId& p : profiles) {
    Run r;
    r.name = profile_slug(p);
    r.trn = {data_path(multitask_file_name(p.gender, p.age, "trn"))};
    r.dev = {data_path(multitask_file_name(p.gender, p.age, "dev"))};
    r.tst = {data_path(multitask_file_name(p.gender, p.age, "tst"))};
    r.out = (fs::path(out_dir) / ("profile-" + r.name)).string();
    runs.push_back(r);
  }
  {
    Run r;
    r.name = "multi";
    r.trn = {data_path("personalized-dialog-mt-all-trn.txt")};
    r.dev = {data_path("personalized-dialog-mt-all-dev.txt")};
    for (const ProfileId& p : profiles)
      r.tst.push_back(data_path(multitask_file_name(p.gender, p.age, "tst")));
    r.out = (fs::path(out_dir) / "multi").string();
    runs.push_back(r);
  }

  for (const Run& r : runs) {
    std::ostringstream cmd;
    cmd << shell_quote(exe) << " train --task 5 --model " << model
        << " --data " << shell_quote(data_dir) << " --out " << shell_quote(r.out)
        << " --seed " << seed << " --no-oov";
    for (const std::string& f : r.trn) cmd << " --trn " << shell_quote(f);
    for (const std::string& f : r.dev) cmd << " --dev " << shell_quote(f);
    for (const std::string& f : r.tst) cmd << " --tst " << shell_quote(f);
    if (quiet) cmd << " --quiet";
    if (!quiet) std::cout << "[multitask] run " << r.name << "\n";
    run_child(cmd.str());
  }

  // score the multi-profile model on each profile's own test set
  CandidateSet cands = load_candidates(data_path("candidates.txt"));
  Vocabulary vocab = load_vocabulary(data_path("vocabulary.txt"));
  CandTokens ct = tokenize_candidates(cands, vocab);
  KbConfig config = KbConfig::defaults();
  MemNNModel multi = load_memnn_checkpoint(
      (fs::path(out_dir) / "multi" / "checkpoint.bin").string(), vocab.hash());

  struct Row {
    std::string profile;
    double specific = 0.0;
    double multi = 0.0;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const Run& r = runs[i];
    std::ifstream mf((fs::path(r.out) / "metrics.json").string());
    if (!mf) throw CorpusError("missing metrics for run " + r.name);
    json m = json::parse(mf);
    std::vector<TokDialog> tst = load_tokenized(r.tst[0], vocab, cands, config);
    EvalMetrics em = evaluate_memnn(multi, tst, ct);
    rows.push_back({r.name, m["test"]["accuracy"].get<double>(), em.accuracy()});
  }

  std::string csv_path = (fs::path(out_dir) / "report.csv").string();
  std::ofstream csv(csv_path);
  csv << "profile,specific,multi,gain\n" << std::fixed << std::setprecision(2);
  std::string txt_path = (fs::path(out_dir) / "report.txt").string();
  std::ofstream txt(txt_path);
  txt << std::left << std::setw(22) << "profile" << std::right << std::setw(10)
      << "specific" << std::setw(10) << "multi" << std::setw(10) << "gain"
      << "\n";
  txt << std::fixed << std::setprecision(2);
  for (const Row& r : rows) {
    double gain = r.multi - r.specific;
    csv << r.profile << "," << r.specific << "," << r.multi << "," << gain
        << "\n";
    txt << std::left << std::setw(22) << r.profile << std::right
        << std::setw(10) << r.specific << std::setw(10) << r.multi
        << std::setw(10) << gain << "\n";
  }
  csv.close();
  txt.close();
  std::ifstream txt_in(txt_path);
  std::cout << txt_in.rdbuf();
  std::cout << "report: " << csv_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"personalized restaurant-dialog corpus generator, rankers and "
               "evaluation harness"};
  app.require_subcommand(1);

  // generate ----------------------------------------------------------------
  auto* gen = app.add_subcommand("generate", "synthesize KB, corpora, "
                                             "candidates and vocabulary");
  GenOptions gopt;
  std::string variant = "full";
  gen->add_option("--out", gopt.out_dir, "output directory")
      ->envname("PDLG_DATA_DIR")
      ->required();
  gen->add_option("--seed", gopt.seed, "generation seed");
  gen->add_option("--variant", variant, "full or small")
      ->check(CLI::IsMember({"full", "small"}));
  std::vector<int> gen_tasks;
  gen->add_option("--task", gen_tasks, "task ids to generate (default all)")
      ->check(CLI::Range(1, 5));
  gen->add_flag("--all-attributes", gopt.all_attributes,
                "write 4-attribute profile lines for every task");
  gen->add_flag("--multitask", gopt.multitask,
                "also write per-profile multitask corpora");
  gen->set_config("--config", "", "key=value config file (# comments)");

  // train -------------------------------------------------------------------
  auto* tr = app.add_subcommand("train", "train a ranker");
  TrainSpec tspec;
  tr->add_option("--data", tspec.data_dir, "data directory")
      ->envname("PDLG_DATA_DIR")
      ->required();
  tr->add_option("--out", tspec.out_dir, "run output directory")->required();
  tr->add_option("--task", tspec.task, "task id")->check(CLI::Range(1, 5));
  tr->add_option("--model", tspec.model, "se | memnn | memnn-split")
      ->check(CLI::IsMember({"se", "memnn", "memnn-split"}));
  tr->add_option("--seed", tspec.seed, "training seed");
  tr->add_option("--dim", tspec.dim, "embedding dimension override");
  tr->add_option("--lr", tspec.lr, "learning rate override");
  tr->add_option("--margin", tspec.margin, "ranking margin override");
  tr->add_option("--negatives", tspec.negatives, "negative sample count");
  tr->add_option("--hops", tspec.hops, "memory hops override");
  tr->add_option("--history", tspec.history,
                 "0/1: include history in the embedding input");
  tr->add_option("--epochs", tspec.epoch_cap, "epoch cap override");
  tr->add_option("--patience", tspec.patience, "early-stopping patience");
  tr->add_option("--max-train-dialogs", tspec.max_train_dialogs,
                 "truncate the training set");
  tr->add_option("--trn", tspec.trn_files, "explicit training files");
  tr->add_option("--dev", tspec.dev_files, "explicit validation files");
  tr->add_option("--tst", tspec.tst_files, "explicit test files");
  bool no_oov = false;
  tr->add_flag("--no-oov", no_oov, "skip the OOV test set");
  tr->add_flag("--quiet", tspec.quiet, "suppress per-epoch output");
  tr->set_config("--config", "", "key=value config file (# comments)");

  // eval --------------------------------------------------------------------
  auto* ev = app.add_subcommand("eval", "evaluate a checkpoint or the oracle");
  std::string ev_data, ev_ckpt, ev_split = "tst", ev_file;
  int ev_task = 1;
  bool ev_oracle = false;
  ev->add_option("--data", ev_data, "data directory")
      ->envname("PDLG_DATA_DIR")
      ->required();
  ev->add_option("--checkpoint", ev_ckpt, "model checkpoint to evaluate");
  ev->add_flag("--oracle", ev_oracle, "evaluate the rule-based responder");
  ev->add_option("--task", ev_task, "task id")->check(CLI::Range(1, 5));
  ev->add_option("--split", ev_split, "trn | dev | tst | tst-OOV")
      ->check(CLI::IsMember({"trn", "dev", "tst", "tst-OOV"}));
  ev->add_option("--file", ev_file, "explicit corpus file (overrides task/split)");
  std::string ev_dump;
  ev->add_option("--dump", ev_dump, "write per-turn predictions to this file");
  ev->set_config("--config", "", "key=value config file (# comments)");

  // multitask ---------------------------------------------------------------
  auto* mt = app.add_subcommand(
      "multitask", "profile-specific vs multi-profile training report");
  std::string mt_data, mt_out, mt_model = "memnn";
  std::uint64_t mt_seed = 1;
  bool mt_quiet = false;
  mt->add_option("--data", mt_data, "data directory (generated with --multitask)")
      ->envname("PDLG_DATA_DIR")
      ->required();
  mt->add_option("--out", mt_out, "report output directory")->required();
  mt->add_option("--seed", mt_seed, "training seed");
  mt->add_option("--model", mt_model, "memnn | memnn-split")
      ->check(CLI::IsMember({"memnn", "memnn-split"}));
  mt->add_flag("--quiet", mt_quiet, "suppress per-epoch output");
  mt->set_config("--config", "", "key=value config file (# comments)");

  // inspect -----------------------------------------------------------------
  auto* in = app.add_subcommand("inspect",
                                "export per-hop attention for one turn");
  std::string in_data, in_ckpt, in_file, in_out = "attention";
  int in_dialog = 0, in_turn = 0;
  in->add_option("--data", in_data, "data directory")
      ->envname("PDLG_DATA_DIR")
      ->required();
  in->add_option("--checkpoint", in_ckpt, "memory-network checkpoint")
      ->required();
  in->add_option("--file", in_file, "corpus file to read")->required();
  in->add_option("--dialog", in_dialog, "dialog index (0-based)");
  in->add_option("--turn", in_turn, "exchange index within the dialog");
  in->add_option("--out", in_out, "output path prefix");

  // verify ------------------------------------------------------------------
  auto* vf = app.add_subcommand(
      "verify", "replay corpora through the oracle, byte-for-byte");
  std::string vf_data;
  std::vector<int> vf_tasks;
  vf->add_option("--data", vf_data, "data directory")
      ->envname("PDLG_DATA_DIR")
      ->required();
  vf->add_option("--task", vf_tasks, "task ids to verify (default all)")
      ->check(CLI::Range(1, 5));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      gopt.small_variant = variant == "small";
      if (!gen_tasks.empty()) gopt.tasks = gen_tasks;
      GenReport rep = generate_corpus(gopt);
      for (const FileReport& f : rep.files)
        std::cout << f.name << "  dialogs=" << f.dialogs << "\n";
      std::cout << "kb half size " << rep.kb_half_size << "\n"
                << "candidates " << rep.candidate_count << "\n"
                << "vocabulary " << rep.vocab_size << " (hash " << std::hex
                << rep.vocab_hash << std::dec << ")\n";
      return 0;
    }
    if (tr->parsed()) {
      tspec.eval_oov = !no_oov;
      TrainResult res = train_model(tspec);
      std::cout << "best dev " << std::fixed << std::setprecision(2)
                << res.best_dev << " (epoch " << res.best_epoch << "/"
                << res.epochs_run << ")\n"
                << std::defaultfloat;
      print_metrics("test", res.test);
      if (res.has_oov) print_metrics("test-OOV", res.test_oov);
      std::cout << "checkpoint " << res.checkpoint_path << "\n"
                << "metrics " << res.metrics_path << "\n";
      return 0;
    }
    if (ev->parsed()) {
      std::string file = ev_file;
      if (file.empty())
        file = (fs::path(ev_data) / corpus_file_name(ev_task, ev_split)).string();
      if (ev_oracle != ev_ckpt.empty())
        throw CLI::ValidationError("eval",
                                   "pass exactly one of --oracle / --checkpoint");
      if (ev_oracle) {
        KbConfig config = KbConfig::defaults();
        Oracle oracle(config);
        EvalMetrics m = evaluate_oracle(oracle, file);
        print_metrics(file, m);
        return 0;
      }
      CandidateSet cands =
          load_candidates((fs::path(ev_data) / "candidates.txt").string());
      Vocabulary vocab =
          load_vocabulary((fs::path(ev_data) / "vocabulary.txt").string());
      CandTokens ct = tokenize_candidates(cands, vocab);
      KbConfig config = KbConfig::defaults();
      std::vector<TokDialog> data = load_tokenized(file, vocab, cands, config);
      ModelKind kind = peek_checkpoint_kind(ev_ckpt);
      EvalMetrics m;
      std::vector<int> preds;
      std::vector<int>* pp = ev_dump.empty() ? nullptr : &preds;
      if (kind == ModelKind::se) {
        SEModel model = load_se_checkpoint(ev_ckpt, vocab.hash());
        m = evaluate_se(model, data, ct, pp);
      } else {
        MemNNModel model = load_memnn_checkpoint(ev_ckpt, vocab.hash());
        m = evaluate_memnn(model, data, ct, pp);
      }
      if (pp) {
        std::ofstream dump(ev_dump);
        if (!dump) throw CorpusError("cannot write " + ev_dump);
        std::size_t i = 0;
        for (const TokDialog& td : data)
          for (const auto& e : td.examples) {
            dump << (preds[i] == e.gold ? "ok" : "MISS") << "\t"
                 << cands.texts[preds[i]] << "\t" << cands.texts[e.gold] << "\n";
            ++i;
          }
      }
      print_metrics(file, m);
      return 0;
    }
    if (mt->parsed())
      return run_multitask(mt_data, mt_out, mt_seed, mt_model, mt_quiet);
    if (in->parsed()) {
      CandidateSet cands =
          load_candidates((fs::path(in_data) / "candidates.txt").string());
      Vocabulary vocab =
          load_vocabulary((fs::path(in_data) / "vocabulary.txt").string());
      KbConfig config = KbConfig::defaults();
      MemNNModel model = load_memnn_checkpoint(in_ckpt, vocab.hash());
      std::vector<Dialog> dialogs = load_corpus(in_file);
      if (in_dialog < 0 || in_dialog >= static_cast<int>(dialogs.size()))
        throw CorpusError("dialog index out of range");
      AttentionExport ex = trace_attention(model, dialogs[in_dialog], vocab,
                                           cands, config, in_turn);
      write_attention_csv(ex, in_out + ".csv");
      write_attention_text(ex, in_out + ".txt");
      std::ifstream txt(in_out + ".txt");
      std::cout << txt.rdbuf();
      std::cout << "wrote " << in_out << ".csv and " << in_out << ".txt\n";
      return 0;
    }
    if (vf->parsed()) {
      if (vf_tasks.empty()) vf_tasks = {1, 2, 3, 4, 5};
      KbConfig config = KbConfig::defaults();
      Oracle oracle(config);
      bool ok = true;
      for (int task : vf_tasks) {
        for (const char* split : kSplitNames) {
          std::string path =
              (fs::path(vf_data) / corpus_file_name(task, split)).string();
          if (!fs::exists(path)) continue;
          VerifyResult v = verify_corpus_file(oracle, path);
          if (v.mismatches == 0) {
            std::cout << "OK   " << path << "  dialogs=" << v.dialogs
                      << " exchanges=" << v.exchanges << "\n";
          } else {
            ok = false;
            std::cout << "FAIL " << path << "  mismatches=" << v.mismatches
                      << "/" << v.exchanges << "\n"
                      << v.first_mismatch << "\n";
          }
        }
      }
      if (!ok) throw CorpusError("verification found mismatching bot turns");
      return 0;
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const TrainingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const CorpusError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
