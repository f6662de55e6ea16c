#pragma once
// Deterministic PRNG used for all sampling. xoshiro256++ seeded via splitmix64.
// Self-contained so that results are byte-identical across platforms and
// standard library versions; parallel loops derive one generator per work item
// from (seed, index), making output independent of the thread count.

#include <cstdint>

#include "klab/smallmat.hpp"

namespace klab {

inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  // Generator for work item `index` of a seeded batch.
  static Rng for_index(uint64_t seed, uint64_t index) {
    uint64_t sm = seed;
    (void)splitmix64(sm);
    sm ^= 0x632be59bd9b4e019ULL * (index + 1);
    return Rng(splitmix64(sm));
  }

  uint64_t next() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform in [0,1)
  double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * u01(); }

  int pick_sign() { return (next() & 1) ? 1 : -1; }

  double normal() {
    // Box-Muller, no cached spare (keeps the stream position unambiguous)
    double u1 = u01();
    while (u1 <= 0.0) u1 = u01();
    const double u2 = u01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(6.283185307179586476925286766559 * u2);
  }

  Vec unit_vector(int d) {
    Vec v(d);
    while (true) {
      for (int i = 0; i < d; ++i) v[i] = normal();
      const double nrm = norm2(v);
      if (nrm > 1e-8) return vscale(1.0 / nrm, v);
    }
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

}  // namespace klab
