#include <cmath>
#include <vector>

#include "doctest.h"
#include "pdlg/dense.hpp"
#include "pdlg/error.hpp"

using namespace pdlg;

TEST_SUITE_BEGIN("properties");

TEST_CASE("softmax normalizes and is shift-invariant") {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + int(rng.below(12));
    Vec s(n), t(n);
    double shift = rng.uniform(-50.0, 50.0);
    for (int i = 0; i < n; ++i) {
      s[i] = rng.uniform(-10.0, 10.0);
      t[i] = s[i] + shift;
    }
    softmax_inplace(s);
    softmax_inplace(t);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      sum += s[i];
      CHECK(s[i] == doctest::Approx(t[i]).epsilon(1e-12));
      CHECK(s[i] >= 0.0);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("softmax handles extreme logits without overflow") {
  Vec s{1000.0, 999.0, -1000.0};
  softmax_inplace(s);
  CHECK(std::isfinite(s[0]));
  CHECK(s[0] > s[1]);
  CHECK(s[2] == doctest::Approx(0.0));
}

TEST_CASE("bag embedding is additive over concatenation") {
  Rng rng(2);
  Mat m(6, 30);
  fill_uniform(m, rng, -1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> x, y, xy;
    int nx = int(rng.below(6)), ny = int(rng.below(6));
    for (int i = 0; i < nx; ++i) x.push_back(int(rng.below(30)));
    for (int i = 0; i < ny; ++i) y.push_back(int(rng.below(30)));
    xy = x;
    xy.insert(xy.end(), y.begin(), y.end());
    Vec bx = bag_embed(m, x), by = bag_embed(m, y), bxy = bag_embed(m, xy);
    for (int k = 0; k < 6; ++k)
      CHECK(bxy[k] == doctest::Approx(bx[k] + by[k]).epsilon(1e-12));
  }
}

TEST_CASE("hinge rank loss equals the naive oracle on random instances") {
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    int n = 1 + int(rng.below(20));
    double margin = rng.uniform(0.0, 0.5);
    double pos = rng.uniform(-2.0, 2.0);
    Vec negs(n);
    for (int i = 0; i < n; ++i) negs[i] = rng.uniform(-2.0, 2.0);

    HingeResult h = hinge_rank_loss(margin, pos, negs);

    double want = 0.0, kink = 1e300;
    for (int i = 0; i < n; ++i) {
      double v = margin - pos + negs[i];
      want += std::max(0.0, v);
      kink = std::min(kink, std::abs(v));
      CHECK(bool(h.active[i]) == (v > 0.0));
    }
    CHECK(h.loss == doctest::Approx(want).epsilon(1e-12));
    CHECK(h.kink_distance == doctest::Approx(kink).epsilon(1e-12));
  }
}

TEST_SUITE_END();

TEST_CASE("dot and matvec match naive evaluation") {
  Rng rng(4);
  Mat r(5, 7);
  fill_uniform(r, rng, -1.0, 1.0);
  Vec u(7), want(5, 0.0), got(5);
  for (auto& v : u) v = rng.uniform(-1.0, 1.0);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 7; ++j) want[i] += r.at(i, j) * u[j];
  matvec_into(r, u.data(), got.data());
  for (int i = 0; i < 5; ++i) CHECK(got[i] == doctest::Approx(want[i]));
}

TEST_CASE("add_outer accumulates g u^T") {
  Mat r(2, 3);
  Vec g{1.0, 2.0}, u{3.0, 4.0, 5.0};
  add_outer(r, g.data(), u.data(), 0.5);
  CHECK(r.at(0, 0) == doctest::Approx(1.5));
  CHECK(r.at(1, 2) == doctest::Approx(5.0));
}

TEST_CASE("sgd_step rejects non-finite gradients") {
  Vec p{1.0, 2.0};
  Vec g{0.0, std::numeric_limits<double>::quiet_NaN()};
  CHECK_THROWS_AS(sgd_step(p, g, 0.1), TrainingError);
}

TEST_CASE("grad_check accepts a correct quadratic gradient and flags a wrong one") {
  Rng rng(5);
  Vec params(10);
  for (auto& v : params) v = rng.uniform(-1.0, 1.0);
  auto loss = [&] {
    double s = 0.0;
    for (double v : params) s += 0.5 * v * v;
    return LossProbe{s, 1e9};
  };
  Vec grad = params;  // d/dv of 0.5 v^2
  Rng probe(6);
  GradCheckReport rep = grad_check(loss, params, grad, 1e-5, probe);
  CHECK(rep.checked == 10);
  CHECK(rep.max_rel_err < 1e-8);

  grad[3] += 0.5;  // corrupt one coordinate
  Rng probe2(6);
  rep = grad_check(loss, params, grad, 1e-5, probe2);
  CHECK(rep.max_rel_err > 1e-2);
}
