#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ecdl/bigint.hpp"
#include "ecdl/cost_ledger.hpp"
#include "ecdl/errors.hpp"
#include "ecdl/register_file.hpp"

namespace ecdl {

// Reversible modular arithmetic building blocks, simulated at word level.
// Cost accounting follows the fixed decomposition: a modular doubling is one
// addition-equivalent (the mod-p reduction's compare is absorbed into that
// charge), a modular addition is two quantum-quantum additions, and an n-bit
// modular multiplication is exactly 3n quantum-quantum additions.

// 2A mod p for 0 <= A < p, p odd. Bijective on [0, p). The uncomputation of
// the reduction's control qubit works because the result is even iff no
// subtraction happened (p odd).
Int mod_double(const Int& a, const Int& p, CostLedger& ledger);
Int mod_double_reverse(const Int& a, const Int& p, CostLedger& ledger);

// (x, y) -> (x, (x + y) mod p); bijective in y for fixed x.
Int mod_add(const Int& x, const Int& y, const Int& p, CostLedger& ledger);
Int mod_add_reverse(const Int& x, const Int& y_out, const Int& p, CostLedger& ledger);

// (x, y, 0) -> (x, y, x*y mod p) via n interleaved doublings and
// conditional additions (A <-> 2A <-> 2A + x_i y), high bit first.
Int mod_mul(const Int& x, const Int& y, const Int& p, CostLedger& ledger);
// (x, y, x*y mod p) -> (x, y, 0); throws irreversible_fault if the target
// register does not hold the product.
void mod_mul_reverse(const Int& x, const Int& y, const Int& target, const Int& p,
                     CostLedger& ledger);

// Reversible-op harness: an op with explicit forward and backward actions on
// a register file. reverse(op, op(s)) must equal s bit for bit.
struct RevOp {
  std::string name;
  std::function<void(RegisterFile&)> forward;
  std::function<void(RegisterFile&)> backward;
};

void apply_op(const RevOp& op, RegisterFile& rf);
void reverse_op(const RevOp& op, RegisterFile& rf);

// Round-trip check used by tests: applies forward then backward and verifies
// bit-exact restoration; throws irreversible_fault on disagreement.
void check_round_trip(const RevOp& op, RegisterFile rf);

// Register-file wrappers around the modular ops (for the reversal harness).
RevOp op_mod_double(const std::string& reg, const Int& p, CostLedger& ledger);
RevOp op_mod_add(const std::string& x_reg, const std::string& y_reg, const Int& p,
                 CostLedger& ledger);
RevOp op_mod_mul(const std::string& x_reg, const std::string& y_reg, const std::string& out_reg,
                 const Int& p, CostLedger& ledger);

}  // namespace ecdl
