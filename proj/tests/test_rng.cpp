#include <set>
#include <vector>

#include "doctest.h"
#include "pdlg/rng.hpp"

using namespace pdlg;

TEST_CASE("same seed reproduces the stream") {
  Rng a(123), b(123);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different seeds differ") {
  Rng a(1), b(2);
  int same = 0;
  for (int i = 0; i < 64; ++i)
    if (a.next_u64() == b.next_u64()) ++same;
  CHECK(same == 0);
}

TEST_CASE("child streams derive from the origin, not consumed state") {
  Rng a(42);
  Rng c1 = a.child("kb");
  a.next_u64();
  a.next_u64();
  Rng c2 = a.child("kb");
  CHECK(c1.next_u64() == c2.next_u64());
}

TEST_CASE("child streams with different labels are distinct") {
  Rng a(42);
  Rng x = a.child("one");
  Rng y = a.child("two");
  Rng z = a.child(std::uint64_t{3});
  std::set<std::uint64_t> firsts{x.next_u64(), y.next_u64(), z.next_u64()};
  CHECK(firsts.size() == 3);
}

TEST_CASE("below stays in range and covers small ranges") {
  Rng r(7);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    std::uint64_t v = r.below(5);
    CHECK(v < 5);
    seen.insert(v);
  }
  CHECK(seen.size() == 5);
}

TEST_CASE("below is unbiased enough on a coarse histogram") {
  Rng r(99);
  const int buckets = 8, n = 80000;
  std::vector<int> hist(buckets, 0);
  for (int i = 0; i < n; ++i) ++hist[r.below(buckets)];
  // 5-sigma band around n/buckets
  double mean = double(n) / buckets;
  double sigma = std::sqrt(mean * (1.0 - 1.0 / buckets));
  for (int b = 0; b < buckets; ++b)
    CHECK(std::abs(hist[b] - mean) < 5 * sigma);
}

TEST_CASE("shuffle is a permutation and deterministic") {
  std::vector<int> v(50);
  for (int i = 0; i < 50; ++i) v[i] = i;
  Rng a(5), b(5);
  auto w = v;
  a.shuffle(v);
  b.shuffle(w);
  CHECK(v == w);
  std::set<int> s(v.begin(), v.end());
  CHECK(s.size() == 50);
  CHECK(v != std::vector<int>(s.begin(), s.end()));  // astronomically unlikely
}

TEST_CASE("unit and uniform respect bounds") {
  Rng r(11);
  for (int i = 0; i < 1000; ++i) {
    double u = r.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    double x = r.uniform(-0.1, 0.1);
    CHECK(x >= -0.1);
    CHECK(x < 0.1);
  }
}

TEST_CASE("fnv1a matches reference values") {
  // offset basis for the empty string, published test vector for "a"
  CHECK(Rng::fnv1a("") == 0xcbf29ce484222325ull);
  CHECK(Rng::fnv1a("a") == 0xaf63dc4c8601ec8cull);
  CHECK(Rng::fnv1a("ab") != Rng::fnv1a("ba"));
}
