#include "pdlg/evaluate.hpp"

#include <chrono>

#include "pdlg/kernels.hpp"

namespace pdlg {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// shared batching loop: encode(dialog, example, out_row) fills one query row
template <typename Encode>
EvalMetrics evaluate_batched(const std::vector<TokDialog>& data, int dim,
                             const std::vector<float>& cmat, int n_cands,
                             std::vector<int>* predictions, Encode encode) {
  auto t0 = Clock::now();
  EvalMetrics m;
  m.dialogs = data.size();
  if (predictions) predictions->clear();

  constexpr int kBatch = 8192;
  std::vector<float> queries;
  std::vector<int> golds;
  queries.reserve(static_cast<std::size_t>(kBatch) * dim);
  golds.reserve(kBatch);
  Vec row(dim);

  auto flush = [&] {
    int t = static_cast<int>(golds.size());
    if (t == 0) return;
    std::vector<ScoreHit> hits =
        score_argmax(queries.data(), t, cmat.data(), n_cands, dim);
    for (int i = 0; i < t; ++i) {
      if (hits[i].index == golds[i]) ++m.correct;
      if (predictions) predictions->push_back(hits[i].index);
    }
    m.turns += static_cast<std::size_t>(t);
    queries.clear();
    golds.clear();
  };

  for (const TokDialog& td : data) {
    for (std::size_t e = 0; e < td.examples.size(); ++e) {
      encode(td, static_cast<int>(e), row.data());
      for (int k = 0; k < dim; ++k)
        queries.push_back(static_cast<float>(row[k]));
      golds.push_back(td.examples[e].gold);
      if (static_cast<int>(golds.size()) == kBatch) flush();
    }
  }
  flush();
  m.wall_seconds = seconds_since(t0);
  return m;
}

}  // namespace

EvalMetrics evaluate_oracle(const Oracle& oracle, const std::string& path) {
  auto t0 = Clock::now();
  VerifyResult v = verify_corpus_file(oracle, path);
  EvalMetrics m;
  m.dialogs = v.dialogs;
  m.turns = v.exchanges;
  m.correct = v.exchanges - v.mismatches;
  m.wall_seconds = seconds_since(t0);
  return m;
}

std::vector<float> candidate_matrix(const Mat& table, const CandTokens& ct) {
  const int n = ct.count();
  const int d = table.rows;
  std::vector<float> cmat(static_cast<std::size_t>(n) * d);
  Vec row(d);
  for (int c = 0; c < n; ++c) {
    bag_embed_into(table, ct.get(c), row.data());
    for (int k = 0; k < d; ++k)
      cmat[static_cast<std::size_t>(c) * d + k] = static_cast<float>(row[k]);
  }
  return cmat;
}

EvalMetrics evaluate_se(const SEModel& model, const std::vector<TokDialog>& data,
                        const CandTokens& ct, std::vector<int>* predictions) {
  std::vector<float> cmat = candidate_matrix(model.B, ct);
  return evaluate_batched(
      data, model.dim(), cmat, ct.count(), predictions,
      [&](const TokDialog& td, int e, double* out) {
        std::vector<int> x = se_encode_input(td, e, model.hp.use_history);
        model.encode_into(x, out);
      });
}

EvalMetrics evaluate_memnn(const MemNNModel& model,
                           const std::vector<TokDialog>& data,
                           const CandTokens& ct, std::vector<int>* predictions) {
  std::vector<float> cmat = candidate_matrix(model.A, ct);
  MemNNForward f;
  return evaluate_batched(
      data, model.dim(), cmat, ct.count(), predictions,
      [&](const TokDialog& td, int e, double* out) {
        MemView mem = build_memories(td, td.examples[e].context_entries,
                                     model.split, model.hp.max_memories);
        memnn_forward(model, mem, td.examples[e].query, f);
        const Vec& u = f.u.back();
        std::copy(u.begin(), u.end(), out);
      });
}

}  // namespace pdlg
