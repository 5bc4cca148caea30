#include <doctest.h>

#include <vector>

#include "ecdl/ec_group.hpp"
#include "ecdl/group_shift.hpp"
#include "ecdl/rng.hpp"

using namespace ecdl;

TEST_CASE("quantum division examples and oracle agreement") {
  CostLedger L;
  CHECK(div_quantum(7, 0, 23, L) == 0);
  CHECK(div_quantum(96, 1, 257, L) == 83);  // the worked inverse
  CHECK_THROWS_AS(div_quantum(0, 5, 23, L), domain_fault);
  Rng rng(31);
  Int p = 10007;
  for (int t = 0; t < 1000; ++t) {
    Int x = 1 + rng.random_below(p - 1);
    Int y = rng.random_below(p);
    CostLedger scratch;
    Int z = div_quantum(x, y, p, scratch);
    CHECK(z == mod_floor(y * inv_mod(x, p), p));
    CHECK(div_quantum_reverse(x, z, p, scratch) == y);
  }
}

TEST_CASE("division cost: two Euclid passes plus two multiplications") {
  Int p = 257;
  CostLedger L;
  div_quantum(96, 5, p, L);
  CostLedger expect;
  CostLedger euclid = euclid_run_cost(p);
  expect += euclid;
  expect += euclid;  // forward and backward machine passes
  unsigned n = bit_length(p);
  expect.charge_qq_add(n, 3ull * n);
  expect.charge_qq_add(n, 3ull * n);
  CHECK(L == expect);
}

TEST_CASE("shift table has no identity entries") {
  DlpInstance inst = find_toy_instance(8, 5);
  ShiftTable table = build_shift_table(inst, bit_length(inst.q) + 2);
  for (const Point& pt : table.p_multiples) CHECK(!pt.infinity);
  for (const Point& pt : table.q_multiples) CHECK(!pt.infinity);
}

TEST_CASE("group shift: exceptional routing") {
  CurveParams c(23, 1, 1);
  Point A = Point::affine(3, 10);
  ShiftOutcome doubling = group_shift(A, A, c);
  REQUIRE(doubling.lost.has_value());
  CHECK(*doubling.lost == ExceptionalCase::Doubling);
  CHECK(doubling.result == A);  // registers untouched
  Point negA = point_negate(A, c);
  ShiftOutcome inverse = group_shift(negA, A, c);
  REQUIRE(inverse.lost.has_value());
  CHECK(*inverse.lost == ExceptionalCase::InversePair);
  CHECK(inverse.result == negA);
  ShiftOutcome inf = group_shift(Point::inf(), A, c);
  REQUIRE(inf.lost.has_value());
  CHECK(*inf.lost == ExceptionalCase::InvolvesInfinity);
  CHECK_THROWS_AS(group_shift(A, Point::inf(), c), domain_fault);
}

TEST_CASE("group shift equals the classical oracle on every pair of a toy curve") {
  DlpInstance inst = find_instance_with_order(11, 3);
  const CurveParams& c = inst.curve;
  unsigned n = bit_length(inst.q);
  ShiftTable table = build_shift_table(inst, n);
  std::vector<Point> pts{};
  for (Int x = 0; x < c.p; ++x)
    for (Int y = 0; y < c.p; ++y)
      if (on_curve(Point::affine(x, y), c)) pts.push_back(Point::affine(x, y));
  std::vector<Point> constants = table.p_multiples;
  constants.insert(constants.end(), table.q_multiples.begin(), table.q_multiples.end());
  int clean = 0, residue = 0, routed = 0;
  for (const Point& A : constants)
    for (const Point& S : pts) {
      ShiftOutcome out = group_shift(S, A, c);
      Point expect = point_add(S, A, c);
      if (!out.lost) {
        ++clean;
        CHECK(out.result == expect);
        // reverse replay restores the input exactly
        ShiftOutcome back = group_shift_reverse(out.result, A, c);
        CHECK(back.result == S);
      } else if (*out.lost == ExceptionalCase::AncillaResidue) {
        ++residue;
        CHECK(out.result == expect);  // point registers still exact
        CHECK(S == point_negate(point_add(A, A, c), c));
      } else {
        ++routed;
        CHECK(out.result == S);
        CHECK(S.x == A.x);
      }
      CHECK(out.ledger == shift_circuit_cost(c.p));  // exact cost identity
    }
  CHECK(clean > 0);
  CHECK(routed > 0);
  CHECK(residue > 0);
}

TEST_CASE("shift cost decomposition is the fixed ledger identity") {
  Int p = 10007;
  unsigned n = bit_length(p);
  CostLedger expect;
  CostLedger euclid = euclid_run_cost(p);
  CostLedger mul;
  mul.charge_qq_add(n, 3ull * n);
  CostLedger div = euclid + euclid + mul + mul;
  expect = div + div + mul;
  expect.charge_cq_add(n, 5);
  CHECK(shift_circuit_cost(p) == expect);
  // and a real shift charges exactly that
  CurveParams c(23, 1, 1);
  ShiftOutcome out = group_shift(Point::affine(0, 1), Point::affine(3, 10), c);
  CHECK(out.ledger == shift_circuit_cost(c.p));
}

TEST_CASE("controlled shift") {
  CurveParams c(23, 1, 1);
  Point A = Point::affine(3, 10);
  Point S = Point::affine(0, 1);
  ShiftOutcome off = controlled_shift(false, S, A, c);
  CHECK(off.result == S);
  CHECK(!off.lost);
  CHECK(off.ledger == shift_circuit_cost(c.p));  // gates run regardless
  ShiftOutcome on = controlled_shift(true, S, A, c);
  CHECK(on.result == group_shift(S, A, c).result);
}

TEST_CASE("ancilla cleanliness across the paired Euclid runs") {
  // div_quantum asserts internal restoration; a workout over random inputs
  // passing without irreversible_fault is the cleanliness check
  Rng rng(12);
  Int p = 65537;
  for (int t = 0; t < 300; ++t) {
    Int x = 1 + rng.random_below(p - 1);
    Int y = rng.random_below(p);
    CostLedger L;
    CHECK_NOTHROW(div_quantum(x, y, p, L));
  }
}

TEST_CASE("fidelity audit matches the 4n/q accounting") {
  DlpInstance inst = find_toy_instance(10, 4242);
  unsigned n = bit_length(inst.q);
  FidelityAudit audit = fidelity_audit(inst, n, 60000, 7);
  CHECK(audit.predicted == doctest::Approx(4.0 * n / to_u64(inst.q)));
  CHECK(std::abs(audit.mean_loss - audit.predicted) < 4 * audit.std_error);
  // the identity enters the walk only through a correctly added inverse
  CHECK(audit.zero_entries == audit.zero_entries_via_inverse);
}

TEST_CASE("fidelity loss is linear in the number of shifts") {
  DlpInstance inst = find_toy_instance(10, 4242);
  unsigned n = bit_length(inst.q);
  FidelityAudit a = fidelity_audit(inst, n, 60000, 8);
  FidelityAudit b = fidelity_audit(inst, 2 * n, 60000, 8);
  CHECK(b.mean_loss == doctest::Approx(2 * a.mean_loss).epsilon(0.15));
}

TEST_CASE("garbage between paired runs is the halting counter plus one flag") {
  CurveParams c(23, 1, 1);
  ShiftOutcome out = group_shift(Point::affine(0, 1), Point::affine(3, 10), c);
  ResolvedConfig rc = resolve_config(c.p, MachineConfig{});
  long h_bits = static_cast<long>(std::ceil(std::log2(static_cast<double>(rc.cycle_budget) + 1)));
  CHECK(out.garbage_bits == h_bits + 1);
}
