#pragma once

#include <cstdint>

namespace sdcurv {

// SplitMix64. Small, portable, and deterministic across platforms, which the
// report reproducibility contract relies on. Per-sample streams are derived
// by mixing the seed with the sample index.
struct Rng {
  uint64_t state;

  explicit Rng(uint64_t seed) : state(seed) {}
  static Rng for_index(uint64_t seed, uint64_t index) {
    Rng r(seed + 0x9e3779b97f4a7c15ULL * (index + 1));
    r.next();
    return r;
  }

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
};

}  // namespace sdcurv
