#pragma once

#include <cstdint>

namespace gridmend {

// SplitMix64: tiny, well-mixed, and stable across platforms, which is what the
// reproducibility guarantees need. Distinct generation purposes (weights,
// repair times, damage selection, ...) run on independent streams derived from
// the instance seed, so adding draws to one purpose never shifts another.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1), 53 random bits; every value is an exact dyadic double.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Unbiased uniform in [0,n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~0ULL - ~0ULL % n;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  // Uniform integer in [lo,hi], inclusive.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::uint64_t state_;
};

// Derives the stream for one generation purpose from an instance seed.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t purpose) {
  SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (purpose + 1)));
  g.next();
  return SplitMix64(g.next());
}

}  // namespace gridmend
