#pragma once

// splitmix64-based RNG. Deterministic across platforms and compilers, which
// keeps seeded reports byte-identical (std:: distributions are not portable).

#include <cstdint>

namespace qmap {

struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}
  // derive an independent stream for (seed, index) pairs
  Rng(std::uint64_t seed, std::uint64_t index) : state(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1))) {
    next();
    next();
  }

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0,1)
  double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  // uniform in [a,b)
  double uniform(double a, double b) { return a + (b - a) * u01(); }
  // uniform integer in [lo, hi] inclusive
  long long uniform_int(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

}  // namespace qmap
