#pragma once

#include <cstdint>

#include "ecdl/bigint.hpp"

namespace ecdl {

// Splittable deterministic generator. The base stream is splitmix64
// (Steele/Lea/Vigna); child streams are derived by hashing (seed, label,
// index). Output is identical on every platform, which the CLI relies on
// for byte-reproducible runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Independent child stream identified by (label, index).
  Rng split(std::uint64_t label, std::uint64_t index = 0) const {
    std::uint64_t s = state_;
    s ^= label * 0xA24BAED4963EE407ull;
    s ^= (index + 1) * 0x9FB21C651E98DF25ull;
    Rng child(s);
    child.next_u64();
    return child;
  }

  double next_double() {  // uniform in [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  bool next_bit() { return (next_u64() >> 63) != 0; }

  // Uniform in [0, 2^bits).
  Int random_bits(unsigned bits) {
    Int v = 0;
    unsigned remaining = bits;
    while (remaining >= 64) {
      v <<= 64;
      v |= Int(static_cast<unsigned long>(next_u64()));
      remaining -= 64;
    }
    if (remaining > 0) {
      v <<= remaining;
      std::uint64_t mask = remaining == 64 ? ~0ull : ((1ull << remaining) - 1);
      v |= Int(static_cast<unsigned long>(next_u64() & mask));
    }
    return v;
  }

  // Uniform integer with exactly `bits` bits (top bit set), bits >= 1.
  Int bits_exact(unsigned bits) {
    if (bits == 0) return 0;
    if (bits == 1) return 1;
    return pow2(bits - 1) + random_bits(bits - 1);
  }

  // Uniform in [0, bound), bound > 0.
  Int random_below(const Int& bound) {
    unsigned nb = bit_length(bound);
    for (;;) {
      Int v = random_bits(nb);
      if (v < bound) return v;
    }
  }

  // Uniform in [lo, hi].
  Int random_range(const Int& lo, const Int& hi) {
    return lo + random_below(hi - lo + 1);
  }

 private:
  std::uint64_t state_;
};

}  // namespace ecdl
