#pragma once

#include <array>
#include <cstdint>

#include "ecdl/bigint.hpp"
#include "ecdl/rng.hpp"

namespace ecdl {

// Miller-Rabin. Below 2^64 the fixed witness set {2,...,37} is deterministic;
// above that, 40 rounds with witnesses drawn from a seed-independent stream so
// that primality answers never depend on caller RNG state.
inline bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, unsigned r) {
  if (a % n == 0) return true;
  Int x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < r; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return true;
  }
  return false;
}

inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  static const std::array<unsigned, 12> small = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (unsigned p : small) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  Int d = n - 1;
  unsigned r = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++r;
  }
  if (bit_length(n) <= 64) {
    for (unsigned a : small)
      if (!miller_rabin_witness(n, a, d, r)) return false;
    return true;
  }
  for (unsigned a : small)
    if (!miller_rabin_witness(n, a, d, r)) return false;
  Rng wrng(0xC0FFEE0Dull ^ to_u64(n % Int(static_cast<unsigned long>(0x7FFFFFFFFFFFFFFFull))));
  for (int i = 0; i < 28; ++i) {
    Int a = 2 + wrng.random_below(n - 3);
    if (!miller_rabin_witness(n, a, d, r)) return false;
  }
  return true;
}

// Uniform prime with exactly `bits` bits.
inline Int random_prime(unsigned bits, Rng& rng) {
  for (;;) {
    Int c = rng.bits_exact(bits);
    if (bits > 1) c |= 1;
    if (is_prime(c)) return c;
  }
}

}  // namespace ecdl
