#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pdlg/rng.hpp"

namespace pdlg {

// Column-major rows x cols matrix.  Embedding tables are stored as dim x V so
// that one token's vector is a contiguous column.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

  double* col(int j) { return a.data() + static_cast<std::size_t>(j) * rows; }
  const double* col(int j) const { return a.data() + static_cast<std::size_t>(j) * rows; }
  double& at(int i, int j) { return a[static_cast<std::size_t>(j) * rows + i]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(j) * rows + i]; }
  std::size_t size() const { return a.size(); }
  void zero() { std::fill(a.begin(), a.end(), 0.0); }
};

using Vec = std::vector<double>;

void fill_uniform(Mat& m, Rng& rng, double lo, double hi);

double dot(const double* x, const double* y, int n);

// sum of embedding columns for a token bag (empty bag -> zero vector)
void bag_embed_into(const Mat& m, std::span<const int> tokens, double* out);
Vec bag_embed(const Mat& m, std::span<const int> tokens);

// f(x, y) = (A x)^T (B y) with bag-of-tokens x, y
double score_pair(const Mat& A, const Mat& B, std::span<const int> x,
                  std::span<const int> y);

// in-place max-subtracted softmax; empty input is a no-op
void softmax_inplace(std::span<double> s);

// y = R u  (R is rows x cols column-major, u has cols entries)
void matvec_into(const Mat& R, const double* u, double* out);
// accumulates outer product contribution  R += scale * (g u^T)
void add_outer(Mat& R, const double* g, const double* u, double scale);

// margin ranking loss  sum_i max(0, margin - pos + neg_i)
// active[i] marks negatives inside the margin; kink_distance is the smallest
// |margin - pos + neg_i| over all i (distance to the nearest hinge kink).
struct HingeResult {
  double loss = 0.0;
  std::vector<std::uint8_t> active;
  double kink_distance = 0.0;
};
HingeResult hinge_rank_loss(double margin, double pos, std::span<const double> negs);

// p -= lr * g elementwise; throws TrainingError on non-finite gradient
void sgd_step(std::span<double> params, std::span<const double> grads, double lr);

// Loss evaluation for gradient checking.  kink_distance reports how close the
// current point is to a hinge kink so the checker can skip coordinates whose
// central difference would straddle non-smoothness.
struct LossProbe {
  double loss = 0.0;
  double kink_distance = 0.0;
};

struct GradCheckReport {
  double max_rel_err = 0.0;
  int checked = 0;
  int skipped = 0;
};

// Central-difference check of analytic_grad for the scalar loss over params.
// Probes up to max_coords coordinates (all if max_coords <= 0 or >= size).
// Relative error denominator is max(|analytic|, |numeric|, 1.0).
GradCheckReport grad_check(const std::function<LossProbe()>& loss_fn,
                           std::span<double> params,
                           std::span<const double> analytic_grad, double eps,
                           Rng& rng, int max_coords = 0);

}  // namespace pdlg
