// Throughput comparison of the serial reference scoring kernel against the
// OpenMP variant, plus a bit-identity check on the argmax results.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "pdlg/kernels.hpp"
#include "pdlg/rng.hpp"

using namespace pdlg;

namespace {

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  int T = argc > 1 ? std::atoi(argv[1]) : 4096;
  int N = argc > 2 ? std::atoi(argv[2]) : 30000;
  int dim = argc > 3 ? std::atoi(argv[3]) : 32;
  int reps = argc > 4 ? std::atoi(argv[4]) : 3;

  Rng rng(42);
  std::vector<float> queries(static_cast<std::size_t>(T) * dim);
  std::vector<float> cands(static_cast<std::size_t>(N) * dim);
  for (float& v : queries) v = static_cast<float>(rng.uniform(-1.0, 1.0));
  for (float& v : cands) v = static_cast<float>(rng.uniform(-1.0, 1.0));

  std::printf("queries=%d candidates=%d dim=%d reps=%d\n", T, N, dim, reps);
  double flops = 2.0 * T * N * dim;

  std::vector<ScoreHit> ref;
  double best_serial = 1e30, best_omp = 1e30;
  for (int r = 0; r < reps; ++r) {
    double t0 = now_s();
    ref = score_argmax_serial(queries.data(), T, cands.data(), N, dim);
    double dt = now_s() - t0;
    if (dt < best_serial) best_serial = dt;
  }
  std::vector<ScoreHit> par;
  for (int r = 0; r < reps; ++r) {
    double t0 = now_s();
    par = score_argmax_omp(queries.data(), T, cands.data(), N, dim);
    double dt = now_s() - t0;
    if (dt < best_omp) best_omp = dt;
  }

  for (int i = 0; i < T; ++i) {
    if (ref[i].index != par[i].index || ref[i].score != par[i].score) {
      std::printf("MISMATCH at query %d: serial (%d, %g) vs omp (%d, %g)\n", i,
                  ref[i].index, ref[i].score, par[i].index, par[i].score);
      return 1;
    }
  }

  std::printf("serial: %8.3f ms  %7.2f GFLOP/s\n", best_serial * 1e3,
              flops / best_serial * 1e-9);
  std::printf("omp:    %8.3f ms  %7.2f GFLOP/s  (speedup %.2fx)\n",
              best_omp * 1e3, flops / best_omp * 1e-9, best_serial / best_omp);
  std::printf("argmax results bit-identical\n");
  return 0;
}
