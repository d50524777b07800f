#pragma once

#include <cstdint>
#include <vector>

namespace pdlg {

// Candidate scoring kernels.  Evaluation reduces to: given T query vectors
// (one per turn) and N candidate vectors, find for each query the argmax of
// the dot product, lowest index winning ties.  Everything is float32 row-major
// to halve memory traffic; queries and candidates are produced in double and
// rounded once.
//
// score_argmax_serial is the reference implementation; score_argmax_omp must
// produce bit-identical results (it parallelizes over queries, so per-query
// arithmetic order is unchanged).  bench_scoring compares their throughput.

struct ScoreHit {
  int index = -1;
  float score = 0.0f;
};

// queries: T x dim, cands: N x dim, both row-major contiguous
std::vector<ScoreHit> score_argmax_serial(const float* queries, int T,
                                          const float* cands, int N, int dim);
std::vector<ScoreHit> score_argmax_omp(const float* queries, int T,
                                       const float* cands, int N, int dim);
std::vector<ScoreHit> score_argmax(const float* queries, int T,
                                   const float* cands, int N, int dim);

// full score row for one query against all candidates (double precision
// accumulate not needed; used by inspect/export paths and tests)
void score_row(const float* query, const float* cands, int N, int dim,
               float* out);

std::vector<float> to_f32(const std::vector<double>& v);

}  // namespace pdlg
