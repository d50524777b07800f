#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace pdlg {

// Deterministic RNG built on SplitMix64.  We avoid std:: distributions on
// purpose: their output is implementation-defined, and corpus generation has
// to be byte-identical across toolchains.  Child streams are derived from the
// origin seed plus a label, so sibling streams are independent of how many
// draws the parent has made.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : origin_(seed), state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  Rng child(std::string_view label) const {
    return Rng(mix(origin_ ^ fnv1a(label)));
  }

  Rng child(std::uint64_t index) const {
    return Rng(mix(origin_ ^ mix(index + 0x51ED2700A1B3C64DULL)));
  }

  std::uint64_t origin() const { return origin_; }

  // uniform in [0, bound); Lemire's method, unbiased
  std::uint32_t below(std::uint32_t bound) {
    std::uint64_t x = next_u64() >> 32;
    std::uint64_t m = x * bound;
    auto l = static_cast<std::uint32_t>(m);
    if (l < bound) {
      std::uint32_t t = (0u - bound) % bound;
      while (l < t) {
        x = next_u64() >> 32;
        m = x * bound;
        l = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

  // uniform in [0, 1)
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  bool bernoulli(double p) { return unit() < p; }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(static_cast<std::uint32_t>(v.size()))];
  }

  // Fisher-Yates
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = below(static_cast<std::uint32_t>(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  static std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001B3ULL;
    }
    return h;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t origin_;
  std::uint64_t state_;
};

}  // namespace pdlg
