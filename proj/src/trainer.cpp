#include "pdlg/trainer.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>

#include "json.hpp"
#include "pdlg/checkpoint.hpp"
#include "pdlg/corpus.hpp"
#include "pdlg/error.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace pdlg {
namespace {

using Clock = std::chrono::steady_clock;

std::vector<TokDialog> load_files(const std::vector<std::string>& paths,
                                  const Vocabulary& vocab,
                                  const CandidateSet& cands,
                                  const KbConfig& config) {
  std::vector<TokDialog> out;
  for (const std::string& p : paths) {
    std::vector<TokDialog> part = load_tokenized(p, vocab, cands, config);
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

std::size_t example_count(const std::vector<TokDialog>& data) {
  std::size_t n = 0;
  for (const TokDialog& td : data) n += td.examples.size();
  return n;
}

struct ExampleRef {
  int dialog = 0;
  int example = 0;
};

std::vector<ExampleRef> example_order(const std::vector<TokDialog>& data) {
  std::vector<ExampleRef> order;
  order.reserve(example_count(data));
  for (std::size_t d = 0; d < data.size(); ++d)
    for (std::size_t e = 0; e < data[d].examples.size(); ++e)
      order.push_back({static_cast<int>(d), static_cast<int>(e)});
  return order;
}

// generic SGD loop with dev-based early stopping; `step` consumes one
// example, `eval_dev` scores the current model, `snapshot`/`restore` manage
// the best-model copy
template <typename Step, typename EvalDev, typename Snapshot>
void epoch_loop(const TrainSpec& spec, int epoch_cap,
                const std::vector<TokDialog>& trn, Rng& root,
                TrainResult& res, Step step, EvalDev eval_dev,
                Snapshot snapshot) {
  std::vector<ExampleRef> order = example_order(trn);
  res.best_dev = -1.0;
  int bad = 0;
  for (int epoch = 1; epoch <= epoch_cap; ++epoch) {
    Rng ep = root.child("epoch").child(static_cast<std::uint64_t>(epoch));
    ep.shuffle(order);
    double total = 0.0;
    for (const ExampleRef& ref : order) total += step(ref, ep);
    if (!std::isfinite(total))
      throw TrainingError("training loss diverged (non-finite)");
    double mean_loss = order.empty() ? 0.0 : total / static_cast<double>(order.size());

    double dev_acc = eval_dev();
    res.dev_curve.push_back(dev_acc);
    res.epochs_run = epoch;
    if (dev_acc > res.best_dev) {
      res.best_dev = dev_acc;
      res.best_epoch = epoch;
      snapshot();
      bad = 0;
    } else {
      ++bad;
    }
    if (!spec.quiet) {
      std::cout << "epoch " << std::setw(3) << epoch << "  loss " << std::fixed
                << std::setprecision(5) << mean_loss << "  dev "
                << std::setprecision(2) << dev_acc << "  best " << res.best_dev
                << " (epoch " << res.best_epoch << ")\n"
                << std::defaultfloat;
      std::cout.flush();
    }
    if (bad >= spec.patience) break;
  }
}

json metrics_to_json(const EvalMetrics& m) {
  return json{{"turns", m.turns},
              {"correct", m.correct},
              {"dialogs", m.dialogs},
              {"accuracy", m.accuracy()},
              {"wall_seconds", m.wall_seconds}};
}

}  // namespace

TrainResult train_model(const TrainSpec& spec) {
  auto t0 = Clock::now();
  KbConfig config = KbConfig::defaults();
  fs::create_directories(spec.out_dir);

  auto data_path = [&](const std::string& name) {
    return (fs::path(spec.data_dir) / name).string();
  };
  CandidateSet cands = load_candidates(data_path("candidates.txt"));
  Vocabulary vocab = load_vocabulary(data_path("vocabulary.txt"));
  CandTokens ct = tokenize_candidates(cands, vocab);

  std::vector<std::string> trn_files = spec.trn_files;
  std::vector<std::string> dev_files = spec.dev_files;
  std::vector<std::string> tst_files = spec.tst_files;
  if (trn_files.empty())
    trn_files = {data_path(corpus_file_name(spec.task, "trn"))};
  if (dev_files.empty())
    dev_files = {data_path(corpus_file_name(spec.task, "dev"))};
  if (tst_files.empty())
    tst_files = {data_path(corpus_file_name(spec.task, "tst"))};

  std::vector<TokDialog> trn = load_files(trn_files, vocab, cands, config);
  if (spec.max_train_dialogs > 0 &&
      trn.size() > static_cast<std::size_t>(spec.max_train_dialogs))
    trn.resize(static_cast<std::size_t>(spec.max_train_dialogs));
  std::vector<TokDialog> dev = load_files(dev_files, vocab, cands, config);
  std::vector<TokDialog> tst = load_files(tst_files, vocab, cands, config);
  std::vector<TokDialog> tst_oov;
  bool want_oov = spec.eval_oov && spec.tst_files.empty();
  if (want_oov)
    tst_oov = load_files({data_path(corpus_file_name(spec.task, "tst-OOV"))},
                         vocab, cands, config);

  int epoch_cap = spec.epoch_cap;
  if (epoch_cap <= 0) epoch_cap = trn.size() <= 1000 ? 200 : 100;

  Rng root(spec.seed);
  Rng init_rng = root.child("init");
  TrainResult res;
  res.checkpoint_path = (fs::path(spec.out_dir) / "checkpoint.bin").string();
  res.metrics_path = (fs::path(spec.out_dir) / "metrics.json").string();

  json hyper;
  if (spec.model == "se") {
    SEModel model;
    model.hp = se_default_hyper(spec.task);
    if (spec.dim > 0) model.hp.dim = spec.dim;
    if (spec.lr > 0) model.hp.lr = spec.lr;
    if (spec.margin > 0) model.hp.margin = spec.margin;
    if (spec.negatives > 0) model.hp.negatives = spec.negatives;
    if (spec.history >= 0) model.hp.use_history = spec.history != 0;
    model.vocab_hash = vocab.hash();
    model.init(static_cast<int>(vocab.tokens.size()), init_rng);
    hyper = {{"dim", model.hp.dim},
             {"lr", model.hp.lr},
             {"margin", model.hp.margin},
             {"negatives", model.hp.negatives},
             {"use_history", model.hp.use_history}};

    SEModel best = model;
    epoch_loop(
        spec, epoch_cap, trn, root, res,
        [&](const ExampleRef& ref, Rng& rng) {
          const TokDialog& td = trn[ref.dialog];
          std::vector<int> x = se_encode_input(td, ref.example, model.hp.use_history);
          return model.train_step(x, td.examples[ref.example].gold, ct, rng);
        },
        [&] { return evaluate_se(model, dev, ct).accuracy(); },
        [&] { best = model; });
    model = best;
    save_checkpoint(res.checkpoint_path, model);
    res.test = evaluate_se(model, tst, ct);
    if (want_oov) {
      res.test_oov = evaluate_se(model, tst_oov, ct);
      res.has_oov = true;
    }
  } else if (spec.model == "memnn" || spec.model == "memnn-split") {
    MemNNModel model;
    model.split = spec.model == "memnn-split";
    model.hp = memnn_default_hyper(spec.task);
    if (spec.dim > 0) model.hp.dim = spec.dim;
    if (spec.lr > 0) model.hp.lr = spec.lr;
    if (spec.margin > 0) model.hp.margin = spec.margin;
    if (spec.negatives > 0) model.hp.negatives = spec.negatives;
    if (spec.hops > 0) model.hp.hops = spec.hops;
    model.vocab_hash = vocab.hash();
    model.init(static_cast<int>(vocab.tokens.size()), init_rng);
    hyper = {{"dim", model.hp.dim},
             {"lr", model.hp.lr},
             {"margin", model.hp.margin},
             {"negatives", model.hp.negatives},
             {"hops", model.hp.hops},
             {"max_memories", model.hp.max_memories}};

    MemNNModel best = model;
    epoch_loop(
        spec, epoch_cap, trn, root, res,
        [&](const ExampleRef& ref, Rng& rng) {
          const TokDialog& td = trn[ref.dialog];
          const TokDialog::Example& ex = td.examples[ref.example];
          MemView mem = build_memories(td, ex.context_entries, model.split,
                                       model.hp.max_memories);
          return memnn_train_step(model, mem, ex.query, ex.gold, ct, rng);
        },
        [&] { return evaluate_memnn(model, dev, ct).accuracy(); },
        [&] { best = model; });
    model = best;
    save_checkpoint(res.checkpoint_path, model);
    res.test = evaluate_memnn(model, tst, ct);
    if (want_oov) {
      res.test_oov = evaluate_memnn(model, tst_oov, ct);
      res.has_oov = true;
    }
  } else {
    throw CorpusError("unknown model kind '" + spec.model + "'");
  }

  res.train_wall_seconds =
      std::chrono::duration<double>(Clock::now() - t0).count();

  json out{{"task", spec.task},
           {"model", spec.model},
           {"seed", spec.seed},
           {"hyper", hyper},
           {"trn_files", trn_files},
           {"dev_files", dev_files},
           {"tst_files", tst_files},
           {"trn_dialogs", trn.size()},
           {"epoch_cap", epoch_cap},
           {"patience", spec.patience},
           {"epochs_run", res.epochs_run},
           {"best_epoch", res.best_epoch},
           {"best_dev", res.best_dev},
           {"dev_curve", res.dev_curve},
           {"test", metrics_to_json(res.test)},
           {"train_wall_seconds", res.train_wall_seconds},
           {"checkpoint", res.checkpoint_path}};
  if (res.has_oov) out["test_oov"] = metrics_to_json(res.test_oov);
  std::ofstream mf(res.metrics_path);
  if (!mf) throw CorpusError("cannot write " + res.metrics_path);
  mf << out.dump(2) << "\n";
  return res;
}

}  // namespace pdlg
