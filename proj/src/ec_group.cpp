#include "ecdl/ec_group.hpp"

#include <functional>
#include <vector>

#include "ecdl/primes.hpp"

namespace ecdl {

CurveParams::CurveParams(Int p_, Int a_, Int b_)
    : p(std::move(p_)), a(std::move(a_)), b(std::move(b_)) {
  if (p <= 3) throw domain_fault("curve modulus must exceed 3");
  if (!is_prime(p)) throw domain_fault("curve modulus must be prime");
  a = mod_floor(a, p);
  b = mod_floor(b, p);
  Int disc = mod_floor(4 * a * a * a + 27 * b * b, p);
  if (disc == 0) throw domain_fault("degenerate curve: 4a^3 + 27b^2 = 0 mod p");
}

Int inv_mod(const Int& x, const Int& p) {
  Int xx = mod_floor(x, p);
  if (xx == 0) throw domain_fault("inverse of zero");
  // plain extended Euclid, deliberately independent of the reversible machine
  Int a = 0, b = 1, big = p, small = xx;
  while (small != 0) {
    Int q = big / small;
    Int t = big - q * small;
    big = small;
    small = t;
    Int tc = a - q * b;
    a = b;
    b = tc;
  }
  if (big != 1) throw domain_fault("not invertible");
  return mod_floor(a, p);
}

Int field_sub(const Int& a, const Int& b, const Int& p) { return mod_floor(a - b, p); }

bool on_curve(const Point& pt, const CurveParams& c) {
  if (pt.infinity) return true;
  if (pt.x < 0 || pt.x >= c.p || pt.y < 0 || pt.y >= c.p) return false;
  Int lhs = mod_floor(pt.y * pt.y, c.p);
  Int rhs = mod_floor(pt.x * pt.x * pt.x + c.a * pt.x + c.b, c.p);
  return lhs == rhs;
}

Point point_negate(const Point& pt, const CurveParams& c) {
  if (pt.infinity) return pt;
  return Point::affine(pt.x, mod_floor(-pt.y, c.p));
}

Point point_add(const Point& P, const Point& R, const CurveParams& c) {
  if (P.infinity) return R;
  if (R.infinity) return P;
  if (P.x == R.x && mod_floor(P.y + R.y, c.p) == 0) return Point::inf();  // inverse pair
  Int lambda;
  if (P == R) {
    lambda = mod_floor((3 * P.x * P.x + c.a) * inv_mod(2 * P.y, c.p), c.p);
  } else {
    lambda = mod_floor((R.y - P.y) * inv_mod(field_sub(R.x, P.x, c.p), c.p), c.p);
  }
  Int x3 = mod_floor(lambda * lambda - P.x - R.x, c.p);
  Int y3 = mod_floor(lambda * (P.x - x3) - P.y, c.p);
  return Point::affine(x3, y3);
}

std::variant<Point, ExceptionalCase> point_add_generic(const Point& P, const Point& R,
                                                       const CurveParams& c) {
  if (P.infinity || R.infinity) return ExceptionalCase::InvolvesInfinity;
  if (P == R) return ExceptionalCase::Doubling;
  if (P.x == R.x) return ExceptionalCase::InversePair;
  Int lambda = mod_floor((R.y - P.y) * inv_mod(field_sub(R.x, P.x, c.p), c.p), c.p);
  Int x3 = mod_floor(lambda * lambda - P.x - R.x, c.p);
  Int y3 = mod_floor(lambda * (P.x - x3) - P.y, c.p);
  return Point::affine(x3, y3);
}

Point scalar_mul(const Int& k, const Point& P, const CurveParams& c) {
  if (k < 0) throw domain_fault("scalar_mul needs k >= 0");
  Point acc = Point::inf();
  Point doubling = P;  // P_i = 2^i P
  Int kk = k;
  while (kk > 0) {
    if (mpz_odd_p(kk.get_mpz_t())) acc = point_add(acc, doubling, c);
    doubling = point_add(doubling, doubling, c);
    kk >>= 1;
  }
  return acc;
}

Int point_order(const Point& P, const CurveParams& c) {
  const std::int64_t cap = 1ll << 24;
  Point acc = P;
  for (std::int64_t r = 1; r <= cap; ++r) {
    if (acc.infinity) return r;
    acc = point_add(acc, P, c);
  }
  throw size_limit_error("point order exceeds 2^24 iteration cap");
}

Int count_points(const CurveParams& c) {
  if (c.p > (1 << 25)) throw size_limit_error("exhaustive point count capped at p <= 2^25");
  std::uint64_t p = to_u64(c.p);
  std::uint64_t a = to_u64(c.a), b = to_u64(c.b);
  std::vector<std::uint8_t> is_square(p, 0);
  for (std::uint64_t t = 0; t <= p / 2; ++t) is_square[(t * t) % p] = 1;
  std::uint64_t count = 1;  // infinity
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t rhs = ((x * x % p) * x + a * x + b) % p;
    if (rhs == 0)
      count += 1;
    else if (is_square[rhs])
      count += 2;
  }
  return Int(static_cast<unsigned long>(count));
}

void DlpInstance::validate() const {
  if (!on_curve(base, curve) || base.infinity) throw domain_fault("base point invalid");
  if (!is_prime(q)) throw domain_fault("base order not prime");
  if (!(scalar_mul(q, base, curve) == Point::inf())) throw domain_fault("qP != infinity");
  if (d < 0 || d >= q) throw domain_fault("d out of range");
  if (!(scalar_mul(d, base, curve) == target)) throw domain_fault("Q != dP");
  if (curve.p <= (1 << 25)) {
    Int n_points = count_points(curve);
    Int t = curve.p + 1 - n_points;
    if (t * t > 4 * curve.p) throw domain_fault("Hasse bound violated");
    if (mod_floor(n_points, q) != 0) throw domain_fault("q does not divide #E");
  }
}

namespace {

// Square root mod an odd prime; nullopt when `a` is a non-residue.
std::optional<Int> sqrt_mod(const Int& a, const Int& p) {
  Int aa = mod_floor(a, p);
  if (aa == 0) return Int(0);
  if (powmod(aa, (p - 1) / 2, p) != 1) return std::nullopt;
  if (p % 4 == 3) return powmod(aa, (p + 1) / 4, p);
  // Tonelli-Shanks
  Int q = p - 1;
  unsigned s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q >>= 1;
    ++s;
  }
  Int z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) z += 1;
  unsigned m = s;
  Int c = powmod(z, q, p);
  Int t = powmod(aa, q, p);
  Int r = powmod(aa, (q + 1) / 2, p);
  while (t != 1) {
    Int t2 = t;
    unsigned i = 0;
    while (t2 != 1) {
      t2 = (t2 * t2) % p;
      ++i;
    }
    Int b = powmod(c, pow2(m - i - 1), p);
    m = i;
    c = (b * b) % p;
    t = (t * c) % p;
    r = (r * b) % p;
  }
  return r;
}

std::optional<DlpInstance> try_instance(const Int& p, Rng& rng,
                                        const std::function<bool(const Int&)>& order_ok) {
  Int a = rng.random_below(p);
  Int b = rng.random_below(p);
  if (mod_floor(4 * a * a * a + 27 * b * b, p) == 0) return std::nullopt;
  CurveParams curve(p, a, b);
  Int n_points = count_points(curve);
  Int rest = n_points;
  std::vector<Int> factors;
  for (Int f = 2; f * f <= rest; ++f) {
    if (rest % f == 0) {
      factors.push_back(f);
      while (rest % f == 0) rest /= f;
    }
  }
  if (rest > 1) factors.push_back(rest);
  for (const Int& q : factors) {
    if (!order_ok(q) || !is_prime(q)) continue;
    Int cofactor = n_points / q;
    for (int tries = 0; tries < 40; ++tries) {
      Int x = rng.random_below(p);
      Int rhs = mod_floor(x * x * x + a * x + b, p);
      auto y = sqrt_mod(rhs, p);
      if (!y) continue;
      Point candidate = Point::affine(x, *y);
      if (!on_curve(candidate, curve)) continue;
      Point base = scalar_mul(cofactor, candidate, curve);
      if (base.infinity) continue;
      if (!(scalar_mul(q, base, curve) == Point::inf())) continue;
      Int d;
      do {
        d = rng.random_below(q);
      } while (d == 0);  // redraw so Q != O
      DlpInstance inst{curve, base, q, d, scalar_mul(d, base, curve)};
      inst.validate();
      return inst;
    }
  }
  return std::nullopt;
}

DlpInstance search_instance(unsigned p_bits_lo, unsigned p_bits_hi, std::uint64_t seed,
                            const std::function<bool(const Int&)>& order_ok) {
  Rng rng(seed);
  const int budget = 20000;
  for (int attempt = 0; attempt < budget; ++attempt) {
    unsigned bits = p_bits_lo + static_cast<unsigned>(rng.below(p_bits_hi - p_bits_lo + 1));
    Int p = random_prime(bits, rng);
    if (p <= 3) continue;
    auto inst = try_instance(p, rng, order_ok);
    if (inst) return *inst;
  }
  throw search_exhausted("no toy instance found within attempt budget");
}

}  // namespace

DlpInstance find_toy_instance(unsigned target_q_bits, std::uint64_t seed) {
  if (target_q_bits < 2 || target_q_bits > 24)
    throw domain_fault("target_q_bits must be in [2, 24]");
  return search_instance(target_q_bits, target_q_bits + 2, seed,
                         [&](const Int& q) { return bit_length(q) == target_q_bits; });
}

DlpInstance find_instance_with_order(const Int& q, std::uint64_t seed) {
  if (!is_prime(q) || q > (1 << 24)) throw domain_fault("order must be a small prime");
  unsigned qb = bit_length(q);
  return search_instance(qb < 3 ? 3 : qb, qb + 3, seed,
                         [&](const Int& cand) { return cand == q; });
}

}  // namespace ecdl
