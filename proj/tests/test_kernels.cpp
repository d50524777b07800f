#include <vector>

#include "doctest.h"
#include "pdlg/kernels.hpp"
#include "pdlg/rng.hpp"

using namespace pdlg;

namespace {

std::vector<float> random_block(Rng& rng, int n, int dim) {
  std::vector<float> v(static_cast<std::size_t>(n) * dim);
  for (auto& x : v) x = static_cast<float>(rng.uniform(-1.0, 1.0));
  return v;
}

std::vector<ScoreHit> naive_argmax(const std::vector<float>& q, int T,
                                   const std::vector<float>& c, int N, int dim) {
  std::vector<ScoreHit> out(T);
  for (int t = 0; t < T; ++t) {
    int best = -1;
    float best_s = 0.0f;
    for (int n = 0; n < N; ++n) {
      float s = 0.0f;
      for (int k = 0; k < dim; ++k)
        s += q[std::size_t(t) * dim + k] * c[std::size_t(n) * dim + k];
      if (best < 0 || s > best_s) {
        best = n;
        best_s = s;
      }
    }
    out[t] = {best, best_s};
  }
  return out;
}

}  // namespace

TEST_CASE("serial kernel matches naive argmax indices") {
  Rng rng(10);
  for (int trial = 0; trial < 6; ++trial) {
    int T = 1 + int(rng.below(40));
    int N = 1 + int(rng.below(700));
    int dim = 1 + int(rng.below(48));
    auto q = random_block(rng, T, dim);
    auto c = random_block(rng, N, dim);
    auto got = score_argmax_serial(q.data(), T, c.data(), N, dim);
    auto want = naive_argmax(q, T, c, N, dim);
    REQUIRE(got.size() == want.size());
    for (int t = 0; t < T; ++t) {
      // float summation order can differ from the naive loop only when two
      // scores tie to the bit; indices must then agree by lowest-index rule
      CHECK(got[t].index == want[t].index);
    }
  }
}

TEST_CASE("omp kernel is bit-identical to the serial reference") {
  Rng rng(11);
  for (int trial = 0; trial < 4; ++trial) {
    int T = 1 + int(rng.below(200));
    int N = 1 + int(rng.below(3000));
    int dim = 1 + int(rng.below(64));
    auto q = random_block(rng, T, dim);
    auto c = random_block(rng, N, dim);
    auto a = score_argmax_serial(q.data(), T, c.data(), N, dim);
    auto b = score_argmax_omp(q.data(), T, c.data(), N, dim);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].index == b[i].index);
      CHECK(a[i].score == b[i].score);
    }
  }
}

TEST_CASE("exact ties resolve to the lowest candidate index") {
  // three identical candidates; every query must pick index 0
  int dim = 8;
  Rng rng(12);
  auto q = random_block(rng, 5, dim);
  std::vector<float> one = random_block(rng, 1, dim);
  std::vector<float> c;
  for (int i = 0; i < 3; ++i) c.insert(c.end(), one.begin(), one.end());
  auto hits = score_argmax(q.data(), 5, c.data(), 3, dim);
  for (const auto& h : hits) CHECK(h.index == 0);
}

TEST_CASE("score_row matches per-candidate dot products") {
  Rng rng(13);
  int N = 37, dim = 12;
  auto q = random_block(rng, 1, dim);
  auto c = random_block(rng, N, dim);
  std::vector<float> row(N);
  score_row(q.data(), c.data(), N, dim, row.data());
  for (int n = 0; n < N; ++n) {
    float want = 0.0f;
    for (int k = 0; k < dim; ++k) want += q[k] * c[std::size_t(n) * dim + k];
    CHECK(row[n] == doctest::Approx(want).epsilon(1e-5));
  }
}
