#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ecdl/cost_ledger.hpp"
#include "ecdl/ec_group.hpp"
#include "ecdl/euclid_machine.hpp"

namespace ecdl {

// The reversible constant-point group shift |S> -> |S + A>, decomposed as
//   x,y <-> x-a,y-b <-> x-a,lambda <-> x'-a,lambda <-> x'-a,y'+b <-> x',y'
// with the division x,y <-> x,y/x built from two Euclid runs and two
// multiplications (the second Euclid run consumes the garbage of the first).

struct ShiftTable {
  std::vector<Point> p_multiples;  // P_i = 2^i P
  std::vector<Point> q_multiples;  // Q_i = 2^i Q
};

// Precomputes 2^i P and 2^i Q for i < n; every entry is verified to be a
// finite point (orders are prime, so no multiple below q collapses to O).
ShiftTable build_shift_table(const DlpInstance& inst, unsigned n);

struct ShiftOutcome {
  Point result;
  std::optional<ExceptionalCase> lost;  // marked, never corrupted
  CostLedger ledger;
  long garbage_bits = 0;  // carried between the paired Euclid runs
};

// (x, y) -> (x, y/x) with x != 0: Euclid forward, multiply, Euclid backward,
// multiply backward. Ancillae are verified restored bit-exactly.
Int div_quantum(const Int& x, const Int& y, const Int& p, CostLedger& ledger,
                const MachineConfig& cfg = {});

// Inverse direction: (x, 0, z) -> (x, x*z mod p, 0); same cost decomposition.
Int div_quantum_reverse(const Int& x, const Int& z, const Int& p, CostLedger& ledger,
                        const MachineConfig& cfg = {});

ShiftOutcome group_shift(const Point& S, const Point& shift, const CurveParams& curve,
                         const MachineConfig& cfg = {});

// Control qubit variant: control = 0 leaves the data registers untouched;
// the scheduled circuit cost is charged either way.
ShiftOutcome controlled_shift(bool control, const Point& S, const Point& shift,
                              const CurveParams& curve, const MachineConfig& cfg = {});

// Exact inverse of the clean-generic chain: maps S + A back to S. Throws on
// results whose forward pass was exceptional (x' = alpha): those carry
// ancilla residue and are not locally reversible.
ShiftOutcome group_shift_reverse(const Point& S_out, const Point& shift,
                                 const CurveParams& curve, const MachineConfig& cfg = {});

// Deterministic circuit cost of one group shift at modulus bit-width n
// (the gate sequence is data-independent).
CostLedger shift_circuit_cost(const Int& p, const MachineConfig& cfg = {});
CostLedger euclid_run_cost(const Int& p, const MachineConfig& cfg = {});

struct FidelityAudit {
  std::uint64_t trials = 0;
  unsigned n = 0;
  Int q;
  double mean_loss = 0;       // mean exceptional hits per walk
  double predicted = 0;       // 4 n / q
  double std_error = 0;
  std::uint64_t zero_entries = 0;             // accumulator reached the identity
  std::uint64_t zero_entries_via_inverse = 0; // ... immediately after a correct inverse add
};

// Classical walk over the 2n controlled shifts with a random starting offset
// k P and random exponent bits, counting basis states exposed to the
// inverse/doubling exceptional cases.
FidelityAudit fidelity_audit(const DlpInstance& inst, unsigned n, std::uint64_t trials,
                             std::uint64_t seed);

}  // namespace ecdl
