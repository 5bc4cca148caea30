#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "ecdl/bigint.hpp"
#include "ecdl/errors.hpp"
#include "ecdl/rng.hpp"

namespace ecdl {

// Classical elliptic-curve arithmetic over GF(p): the ground-truth oracle for
// the reversible machinery and the toy-instance generator.

struct CurveParams {
  Int p, a, b;  // y^2 = x^3 + a x + b over GF(p)

  CurveParams(Int p_, Int a_, Int b_);  // validates p prime > 3, 4a^3+27b^2 != 0

  friend bool operator==(const CurveParams& l, const CurveParams& r) {
    return l.p == r.p && l.a == r.a && l.b == r.b;
  }
};

// Affine point or the point at infinity. Infinity is a tagged value; the
// out-of-range coordinate encoding (p, p) is documented for completeness but
// never used, since the classical code never needs to feed the identity to
// the generic formula.
struct Point {
  bool infinity = true;
  Int x, y;

  static Point inf() { return Point{}; }
  static Point affine(Int x, Int y) { return Point{false, std::move(x), std::move(y)}; }

  friend bool operator==(const Point& l, const Point& r) {
    if (l.infinity || r.infinity) return l.infinity == r.infinity;
    return l.x == r.x && l.y == r.y;
  }
};

// Field helpers (classical extended Euclid, kept independent of the
// reversible euclid machine so the two can cross-validate).
Int inv_mod(const Int& x, const Int& p);
Int field_sub(const Int& a, const Int& b, const Int& p);

bool on_curve(const Point& pt, const CurveParams& curve);
Point point_negate(const Point& pt, const CurveParams& curve);

// Full-case group law (identity, inverse pair, doubling, generic).
Point point_add(const Point& P, const Point& R, const CurveParams& curve);

enum class ExceptionalCase {
  InvolvesInfinity,
  Doubling,
  InversePair,
  // Group-shift only: S = -2A lands on x' = alpha, where the lambda register
  // cannot be uncomputed (division by zero); the point result is still exact
  // but the basis state carries ancilla residue.
  AncillaResidue,
};

// Generic-slope formula only; the three excluded branches come back as
// values so callers can do fidelity accounting.
std::variant<Point, ExceptionalCase> point_add_generic(const Point& P, const Point& R,
                                                       const CurveParams& curve);

// Double-and-add via precomputed doublings P_i = 2^i P.
Point scalar_mul(const Int& k, const Point& P, const CurveParams& curve);

// Smallest r > 0 with r P = infinity; iteration capped at 2^24.
Int point_order(const Point& P, const CurveParams& curve);

// Exhaustive point count (p capped at 2^25).
Int count_points(const CurveParams& curve);

struct DlpInstance {
  CurveParams curve;
  Point base;    // P, of prime order q
  Int q;         // order of P
  Int d;         // discrete log, in [0, q)
  Point target;  // Q = d P

  void validate() const;  // re-derives Q = dP, qP = O, q prime, Hasse bound
};

// Deterministic-given-seed search for a toy instance whose base-point order
// is a prime of exactly `target_q_bits` bits. d is drawn uniformly from
// [0, q); draws of d = 0 are rejected so that Q is never the identity (the
// shift tables need Q != O).
DlpInstance find_toy_instance(unsigned target_q_bits, std::uint64_t seed);

// Same search constrained to an exact point order (test helper).
DlpInstance find_instance_with_order(const Int& q, std::uint64_t seed);

}  // namespace ecdl
