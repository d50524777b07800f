#pragma once

#include <string>
#include <vector>

#include "pdlg/candidates.hpp"
#include "pdlg/dataset.hpp"
#include "pdlg/embed_model.hpp"
#include "pdlg/memnn.hpp"
#include "pdlg/oracle.hpp"

namespace pdlg {

struct EvalMetrics {
  std::size_t turns = 0;
  std::size_t correct = 0;
  std::size_t dialogs = 0;
  double wall_seconds = 0.0;
  double accuracy() const {
    return turns == 0 ? 0.0 : 100.0 * static_cast<double>(correct) /
                                  static_cast<double>(turns);
  }
};

// per-response accuracy of the rule-based responder on a corpus file
EvalMetrics evaluate_oracle(const Oracle& oracle, const std::string& path);

// N x dim row-major float32 bag embeddings of every candidate
std::vector<float> candidate_matrix(const Mat& table, const CandTokens& ct);

// Per-response accuracy of a ranker: per-turn query vectors are batched and
// scored against the candidate matrix with the blocked argmax kernel.
// `predictions` (optional) receives the argmax candidate id per turn, in
// corpus order.
EvalMetrics evaluate_se(const SEModel& model, const std::vector<TokDialog>& data,
                        const CandTokens& ct,
                        std::vector<int>* predictions = nullptr);
EvalMetrics evaluate_memnn(const MemNNModel& model,
                           const std::vector<TokDialog>& data,
                           const CandTokens& ct,
                           std::vector<int>* predictions = nullptr);

}  // namespace pdlg
