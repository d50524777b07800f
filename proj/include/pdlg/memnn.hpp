#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pdlg/dataset.hpp"
#include "pdlg/dense.hpp"
#include "pdlg/rng.hpp"

namespace pdlg {

struct MemNNHyper {
  int dim = 20;
  double lr = 0.001;
  double margin = 0.01;
  int negatives = 100;
  int hops = 1;
  int max_memories = 200;
};

MemNNHyper memnn_default_hyper(int task);

// End-to-end memory network ranker.  A single embedding table A encodes the
// query, the memories, and the candidates; conversation memories additionally
// receive a time embedding indexed by recency (most recent entry = 0).  The
// split variant keeps profile attributes in a separate memory block with its
// own attention and no time embeddings, adding its readout to the
// conversation readout at every hop.
struct MemNNModel {
  MemNNHyper hp;
  bool split = false;
  std::uint64_t vocab_hash = 0;
  Mat A;               // dim x V
  std::vector<Mat> R;  // one dim x dim map per hop
  Mat T;               // dim x max_memories, column = recency index

  void init(int vocab_size, Rng& rng);
  int dim() const { return A.rows; }
};

// memories visible to one example
struct MemView {
  std::vector<std::span<const int>> conv;  // oldest first, truncated
  std::vector<std::span<const int>> prof;  // split variant only
};

// Standard variant: the profile line is the oldest conversation entry.
// Truncation keeps the profile plus the most recent conversation entries.
MemView build_memories(const TokDialog& td, int context_entries, bool split,
                       int max_memories);

struct MemNNForward {
  std::vector<Vec> m;  // conv embeddings (bag + time)
  std::vector<Vec> g;  // profile embeddings
  std::vector<Vec> u;  // hops+1 controller states
  std::vector<Vec> p;  // per-hop conv attention (each sums to 1)
  std::vector<Vec> q;  // per-hop profile attention
};

void memnn_forward(const MemNNModel& model, const MemView& mem,
                   std::span<const int> query, MemNNForward& f);

// score of a candidate bag against a forward pass
double memnn_score(const MemNNModel& model, const MemNNForward& f,
                   std::span<const int> cand);

struct MemNNGrads {
  std::vector<std::pair<int, Vec>> A_cols;  // additive column updates
  std::vector<Mat> dR;
  std::vector<std::pair<int, Vec>> T_cols;
};

// forward/backward against an explicit negative list.  Accumulates sparse
// grads, then applies them with apply_lr (if > 0) and/or hands them back via
// `out` (if non-null).
LossProbe memnn_loss_grad(MemNNModel& model, const MemView& mem,
                          std::span<const int> query, std::span<const int> gold,
                          std::span<const std::span<const int>> negs,
                          MemNNGrads* out, double apply_lr);

double memnn_train_step(MemNNModel& model, const MemView& mem,
                        std::span<const int> query, int gold,
                        const CandTokens& cands, Rng& rng);

}  // namespace pdlg
