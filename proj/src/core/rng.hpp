#ifndef RAIDLAB_RNG_HPP
#define RAIDLAB_RNG_HPP

#include <cstdint>

namespace raidlab {

// Deterministic RNG used everywhere randomness is needed.  The generator
// is fully specified so streams can be reproduced bit-exactly in any
// language:
//
//   mix(x):     splitmix64 finalizer
//     x += 0x9E3779B97F4A7C15
//     z = x; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//     z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//     return z ^ (z >> 31)
//
//   stream(seed, k): xoshiro256** seeded with the four successive
//     splitmix64 outputs starting from state seed XOR mix(k+1), where k
//     is the replication (stream) index.
//
// next_u64 is xoshiro256**'s output; next_double takes the top 53 bits.

inline uint64_t splitmix64_next(uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline uint64_t mix64(uint64_t x) {
  uint64_t s = x;
  return splitmix64_next(s);
}

class Xoshiro256 {
 public:
  explicit Xoshiro256(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64_next(sm);
  }

  // Stream `index` derived from `seed`; independent streams for
  // replications regardless of evaluation order.
  static Xoshiro256 stream(uint64_t seed, uint64_t index) {
    return Xoshiro256(seed ^ mix64(index + 1));
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0,1) with 53-bit resolution.
  double next_double() {
    return double(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in (0,1]; safe as the argument of log().
  double next_open_double() { return 1.0 - next_double(); }

  uint64_t next_below(uint64_t n) {
    // Rejection-free enough for simulation use: 64-bit multiply-shift.
    return static_cast<uint64_t>((__uint128_t(next_u64()) * n) >> 64);
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

}  // namespace raidlab

#endif
