#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace skewlab {

/// Deterministic seedable random generator.
///
/// Wraps std::mt19937_64 (whose output sequence is fixed by the standard) and
/// performs all range reduction by rejection sampling, so identical seeds give
/// identical streams on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : gen_(seed) {}

  std::uint64_t u64() { return gen_(); }

  /// Uniform value in [0, bound). bound must be >= 1.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    // Reject the low tail so that the accepted range is a multiple of bound.
    const std::uint64_t threshold = (std::uint64_t(0) - bound) % bound;  // 2^64 mod bound
    for (;;) {
      std::uint64_t v = gen_();
      if (v >= threshold) return v % bound;
    }
  }

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  /// Deterministic child seed for parallel stream i of a master seed.
  static std::uint64_t child_seed(std::uint64_t master, std::uint64_t i) {
    // splitmix64 on master ^ f(i); independent streams for distinct i.
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (i + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace skewlab
