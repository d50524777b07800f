#include "pdlg/kernels.hpp"

namespace pdlg {

namespace {

// Candidate rows are walked in tiles so a tile stays cache-resident while a
// block of queries is scored against it.  Per query the running max is over
// candidate index order, so tie-breaking (lowest index) is preserved and the
// result does not depend on tiling.
constexpr int kCandTile = 512;
constexpr int kQueryTile = 64;

inline void score_tile(const float* queries, int t0, int t1, const float* cands,
                       int c0, int c1, int dim, ScoreHit* best) {
  for (int t = t0; t < t1; ++t) {
    const float* q = queries + static_cast<std::size_t>(t) * dim;
    ScoreHit b = best[t];
    for (int c = c0; c < c1; ++c) {
      const float* cv = cands + static_cast<std::size_t>(c) * dim;
      float s = 0.0f;
      for (int k = 0; k < dim; ++k) s += q[k] * cv[k];
      if (s > b.score || b.index < 0) {
        b.score = s;
        b.index = c;
      }
    }
    best[t] = b;
  }
}

}  // namespace

std::vector<ScoreHit> score_argmax_serial(const float* queries, int T,
                                          const float* cands, int N, int dim) {
  std::vector<ScoreHit> best(T);
  for (int c0 = 0; c0 < N; c0 += kCandTile) {
    int c1 = c0 + kCandTile < N ? c0 + kCandTile : N;
    for (int t0 = 0; t0 < T; t0 += kQueryTile) {
      int t1 = t0 + kQueryTile < T ? t0 + kQueryTile : T;
      score_tile(queries, t0, t1, cands, c0, c1, dim, best.data());
    }
  }
  return best;
}

std::vector<ScoreHit> score_argmax_omp(const float* queries, int T,
                                       const float* cands, int N, int dim) {
  std::vector<ScoreHit> best(T);
#pragma omp parallel for schedule(static)
  for (int t0 = 0; t0 < T; t0 += kQueryTile) {
    int t1 = t0 + kQueryTile < T ? t0 + kQueryTile : T;
    for (int c0 = 0; c0 < N; c0 += kCandTile) {
      int c1 = c0 + kCandTile < N ? c0 + kCandTile : N;
      score_tile(queries, t0, t1, cands, c0, c1, dim, best.data());
    }
  }
  return best;
}

std::vector<ScoreHit> score_argmax(const float* queries, int T,
                                   const float* cands, int N, int dim) {
#ifdef _OPENMP
  return score_argmax_omp(queries, T, cands, N, dim);
#else
  return score_argmax_serial(queries, T, cands, N, dim);
#endif
}

void score_row(const float* query, const float* cands, int N, int dim,
               float* out) {
  for (int c = 0; c < N; ++c) {
    const float* cv = cands + static_cast<std::size_t>(c) * dim;
    float s = 0.0f;
    for (int k = 0; k < dim; ++k) s += query[k] * cv[k];
    out[c] = s;
  }
}

std::vector<float> to_f32(const std::vector<double>& v) {
  std::vector<float> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<float>(v[i]);
  return out;
}

}  // namespace pdlg
