#include "pdlg/embed_model.hpp"

#include <unordered_set>

#include "pdlg/error.hpp"

namespace pdlg {

SEHyper se_default_hyper(int task) {
  switch (task) {
    case 1: return {32, 0.01, 0.01, 100, true};
    case 2: return {128, 0.01, 0.01, 100, false};
    case 3: return {128, 0.01, 0.1, 1000, false};
    case 4: return {128, 0.001, 0.1, 1000, false};
    case 5: return {32, 0.01, 0.01, 100, true};
    default: throw CorpusError("unknown task id " + std::to_string(task));
  }
}

void SEModel::init(int vocab_size, Rng& rng) {
  A = Mat(hp.dim, vocab_size);
  B = Mat(hp.dim, vocab_size);
  fill_uniform(A, rng, -0.1, 0.1);
  fill_uniform(B, rng, -0.1, 0.1);
}

double SEModel::score(std::span<const int> x, std::span<const int> y) const {
  return score_pair(A, B, x, y);
}

void SEModel::encode_into(std::span<const int> x, double* out) const {
  bag_embed_into(A, x, out);
}

std::vector<int> sample_negatives(int candidate_count, int n, int exclude,
                                  Rng& rng) {
  if (n >= candidate_count)
    throw TrainingError("negative sample count must be below candidate count");
  std::vector<int> out;
  out.reserve(n);
  std::unordered_set<int> seen;
  seen.reserve(n * 2);
  seen.insert(exclude);
  while (static_cast<int>(out.size()) < n) {
    int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(candidate_count)));
    if (seen.insert(c).second) out.push_back(c);
  }
  return out;
}

LossProbe se_loss_grad(SEModel& model, std::span<const int> x,
                       std::span<const int> gold,
                       std::span<const std::span<const int>> negs,
                       SEGrads* grads, double apply_lr) {
  const int d = model.dim();
  Vec ax = bag_embed(model.A, x);
  Vec bg = bag_embed(model.B, gold);
  double pos = dot(ax.data(), bg.data(), d);

  std::vector<Vec> bn(negs.size());
  Vec scores(negs.size());
  for (std::size_t i = 0; i < negs.size(); ++i) {
    bn[i] = bag_embed(model.B, negs[i]);
    scores[i] = dot(ax.data(), bn[i].data(), d);
  }
  HingeResult h = hinge_rank_loss(model.hp.margin, pos, scores);

  Vec dax(d, 0.0);
  int n_active = 0;
  for (std::size_t i = 0; i < negs.size(); ++i) {
    if (!h.active[i]) continue;
    ++n_active;
    for (int k = 0; k < d; ++k) dax[k] += bn[i][k] - bg[k];
  }

  if (grads) {
    grads->dA = Mat(d, model.A.cols);
    grads->dB = Mat(d, model.B.cols);
    for (int t : x) {
      double* c = grads->dA.col(t);
      for (int k = 0; k < d; ++k) c[k] += dax[k];
    }
    for (int t : gold) {
      double* c = grads->dB.col(t);
      for (int k = 0; k < d; ++k) c[k] -= n_active * ax[k];
    }
    for (std::size_t i = 0; i < negs.size(); ++i) {
      if (!h.active[i]) continue;
      for (int t : negs[i]) {
        double* c = grads->dB.col(t);
        for (int k = 0; k < d; ++k) c[k] += ax[k];
      }
    }
  }
  if (apply_lr > 0.0 && n_active > 0) {
    for (int t : x) sgd_step({model.A.col(t), (std::size_t)d}, dax, apply_lr);
    Vec dbg(d);
    for (int k = 0; k < d; ++k) dbg[k] = -n_active * ax[k];
    for (int t : gold) sgd_step({model.B.col(t), (std::size_t)d}, dbg, apply_lr);
    for (std::size_t i = 0; i < negs.size(); ++i) {
      if (!h.active[i]) continue;
      for (int t : negs[i]) sgd_step({model.B.col(t), (std::size_t)d}, ax, apply_lr);
    }
  }
  return {h.loss, h.kink_distance};
}

double SEModel::train_step(std::span<const int> x, int gold,
                           const CandTokens& cands, Rng& rng) {
  std::vector<int> neg_ids = sample_negatives(cands.count(), hp.negatives, gold, rng);
  std::vector<std::span<const int>> negs;
  negs.reserve(neg_ids.size());
  for (int c : neg_ids) negs.push_back(cands.get(c));
  LossProbe p = se_loss_grad(*this, x, cands.get(gold), negs, nullptr, hp.lr);
  return p.loss;
}

}  // namespace pdlg
