#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ecdl {

using Int = mpz_class;  // arbitrary-precision signed integer

// Bit length of |v|; bit_length(0) == 0.
inline unsigned bit_length(const Int& v) {
  if (v == 0) return 0;
  return static_cast<unsigned>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

inline unsigned bit_length(std::uint64_t v) {
  return v == 0 ? 0u : 64u - static_cast<unsigned>(__builtin_clzll(v));
}

inline Int pow2(unsigned k) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

// Floor division (rounds toward -infinity, unlike mpz_class operator/).
inline Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Int powmod(const Int& base, const Int& exp, const Int& mod) {
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

inline std::string to_dec(const Int& v) { return v.get_str(10); }

inline Int from_dec(const std::string& s) {
  Int v;
  if (v.set_str(s, 10) != 0) throw std::invalid_argument("bad decimal integer: " + s);
  return v;
}

inline bool fits_u64(const Int& v) {
  return v >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64 && mpz_fits_ulong_p(v.get_mpz_t());
}

inline std::uint64_t to_u64(const Int& v) { return mpz_get_ui(v.get_mpz_t()); }

}  // namespace ecdl
