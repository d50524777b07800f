#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pdlg/dataset.hpp"
#include "pdlg/dense.hpp"
#include "pdlg/rng.hpp"

namespace pdlg {

struct SEHyper {
  int dim = 32;
  double lr = 0.01;
  double margin = 0.01;
  int negatives = 100;
  bool use_history = false;
};

// default per-task settings
SEHyper se_default_hyper(int task);

// Supervised embeddings: f(x, y) = (A x)^T (B y) over bag-of-words sides,
// trained with the margin ranking loss against sampled negatives.
struct SEModel {
  SEHyper hp;
  std::uint64_t vocab_hash = 0;
  Mat A;  // dim x V, input side
  Mat B;  // dim x V, candidate side

  void init(int vocab_size, Rng& rng);
  int dim() const { return A.rows; }

  double score(std::span<const int> x, std::span<const int> y) const;

  // one SGD step on (x, gold); negatives drawn uniformly without replacement
  // from the candidate set, excluding gold
  double train_step(std::span<const int> x, int gold, const CandTokens& cands,
                    Rng& rng);

  // encode the input side into a dim-vector (A x)
  void encode_into(std::span<const int> x, double* out) const;
};

// forward/backward against an explicit negative list; used by train_step and
// the gradient checks.  When grads is non-null, dense dA/dB are accumulated
// instead of updating the model.
struct SEGrads {
  Mat dA, dB;
};
LossProbe se_loss_grad(SEModel& model, std::span<const int> x,
                       std::span<const int> gold,
                       std::span<const std::span<const int>> negs,
                       SEGrads* grads, double apply_lr);

// sample `n` distinct candidate ids uniformly, excluding `exclude`
std::vector<int> sample_negatives(int candidate_count, int n, int exclude,
                                  Rng& rng);

}  // namespace pdlg
