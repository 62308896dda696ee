#pragma once

// Deterministic random streams for stylistic variation.
//
// Every insertion decision draws from a stream keyed by (seed, sentence
// source span, parameter index). Two runs with the same seed produce
// byte-identical output, and editing one sentence's markers can never
// shift the draws made for another sentence.

#include <cstdint>

namespace fabler {

// splitmix64 (Steele, Lea, Flood 2014). Tiny, well distributed, and the
// whole state is one u64 so streams are cheap to fork.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class RandomStream {
 public:
  explicit RandomStream(uint64_t state) : state_(state) {}

  // Derive a stream from independent key components. Each component is
  // absorbed through a full splitmix step so nearby keys diverge.
  static RandomStream keyed(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
    uint64_t s = seed;
    splitmix64(s);
    s ^= 0x9E3779B97F4A7C15ULL * (a + 1);
    splitmix64(s);
    s ^= 0x9E3779B97F4A7C15ULL * (b + 1);
    splitmix64(s);
    s ^= 0x9E3779B97F4A7C15ULL * (c + 1);
    return RandomStream(s);
  }

  uint64_t next() { return splitmix64(state_); }

  // Uniform in [0, 1); 53 bits of mantissa.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform index in [0, n)
  size_t next_index(size_t n) { return n ? static_cast<size_t>(next() % n) : 0; }

 private:
  uint64_t state_;
};

}  // namespace fabler
