#include "ecdl/mod_ops.hpp"

namespace ecdl {

namespace {
void require_range(const Int& v, const Int& p, const char* what) {
  if (v < 0 || v >= p) throw domain_fault(std::string(what) + " out of range [0, p)");
}
}  // namespace

Int mod_double(const Int& a, const Int& p, CostLedger& ledger) {
  require_range(a, p, "mod_double input");
  if (mpz_even_p(p.get_mpz_t())) throw domain_fault("mod_double requires odd modulus");
  ledger.charge_qq_add(bit_length(p));
  Int r = a << 1;
  if (r >= p) r -= p;
  return r;
}

Int mod_double_reverse(const Int& a, const Int& p, CostLedger& ledger) {
  require_range(a, p, "mod_double_reverse input");
  ledger.charge_qq_add(bit_length(p));
  // even result means no subtraction happened on the way forward
  Int r = mpz_even_p(a.get_mpz_t()) ? Int(a >> 1) : Int((a + p) >> 1);
  return r;
}

Int mod_add(const Int& x, const Int& y, const Int& p, CostLedger& ledger) {
  require_range(x, p, "mod_add x");
  require_range(y, p, "mod_add y");
  ledger.charge_qq_add(bit_length(p), 2);  // add, then the compare-uncompute addition
  Int r = x + y;
  if (r >= p) r -= p;
  return r;
}

Int mod_add_reverse(const Int& x, const Int& y_out, const Int& p, CostLedger& ledger) {
  require_range(x, p, "mod_add_reverse x");
  require_range(y_out, p, "mod_add_reverse y");
  ledger.charge_qq_add(bit_length(p), 2);
  Int r = y_out - x;
  if (r < 0) r += p;
  return r;
}

Int mod_mul(const Int& x, const Int& y, const Int& p, CostLedger& ledger) {
  require_range(x, p, "mod_mul x");
  require_range(y, p, "mod_mul y");
  unsigned n = bit_length(p);
  Int acc = 0;
  // x*y = x_{n-1} y + 2(x_{n-2} y + 2(...)): one doubling and one conditional
  // addition per multiplier bit, n steps of 3 addition-equivalents.
  for (unsigned step = 0; step < n; ++step) {
    unsigned bit = n - 1 - step;
    ledger.charge_qq_add(n);  // doubling
    acc <<= 1;
    if (acc >= p) acc -= p;
    ledger.charge_qq_add(n, 2);  // conditional modular addition
    if (mpz_tstbit(x.get_mpz_t(), bit)) {
      acc += y;
      if (acc >= p) acc -= p;
    }
  }
  return acc;
}

void mod_mul_reverse(const Int& x, const Int& y, const Int& target, const Int& p,
                     CostLedger& ledger) {
  unsigned n = bit_length(p);
  Int acc = target;
  for (unsigned step = 0; step < n; ++step) {
    unsigned bit = step;
    ledger.charge_qq_add(n, 2);
    if (mpz_tstbit(x.get_mpz_t(), bit)) {
      acc -= y;
      if (acc < 0) acc += p;
    }
    ledger.charge_qq_add(n);
    acc = mpz_even_p(acc.get_mpz_t()) ? Int(acc >> 1) : Int((acc + p) >> 1);
  }
  if (acc != 0)
    throw irreversible_fault("mod_mul_reverse: target register did not uncompute to zero");
}

void apply_op(const RevOp& op, RegisterFile& rf) { op.forward(rf); }
void reverse_op(const RevOp& op, RegisterFile& rf) { op.backward(rf); }

void check_round_trip(const RevOp& op, RegisterFile rf) {
  RegisterFile before = rf;
  op.forward(rf);
  op.backward(rf);
  if (!(rf == before))
    throw irreversible_fault("round trip failed for op " + op.name);
}

RevOp op_mod_double(const std::string& reg, const Int& p, CostLedger& ledger) {
  CostLedger* lp = &ledger;
  return RevOp{
      "mod_double(" + reg + ")",
      [reg, p, lp](RegisterFile& rf) { rf.set(reg, mod_double(rf.get(reg), p, *lp)); },
      [reg, p, lp](RegisterFile& rf) { rf.set(reg, mod_double_reverse(rf.get(reg), p, *lp)); }};
}

RevOp op_mod_add(const std::string& x_reg, const std::string& y_reg, const Int& p,
                 CostLedger& ledger) {
  CostLedger* lp = &ledger;
  return RevOp{"mod_add(" + x_reg + "," + y_reg + ")",
               [x_reg, y_reg, p, lp](RegisterFile& rf) {
                 rf.set(y_reg, mod_add(rf.get(x_reg), rf.get(y_reg), p, *lp));
               },
               [x_reg, y_reg, p, lp](RegisterFile& rf) {
                 rf.set(y_reg, mod_add_reverse(rf.get(x_reg), rf.get(y_reg), p, *lp));
               }};
}

RevOp op_mod_mul(const std::string& x_reg, const std::string& y_reg, const std::string& out_reg,
                 const Int& p, CostLedger& ledger) {
  CostLedger* lp = &ledger;
  return RevOp{"mod_mul(" + x_reg + "," + y_reg + "->" + out_reg + ")",
               [=](RegisterFile& rf) {
                 if (rf.get(out_reg) != 0)
                   throw domain_fault("mod_mul target register not zero on forward entry");
                 rf.set(out_reg, mod_mul(rf.get(x_reg), rf.get(y_reg), p, *lp));
               },
               [=](RegisterFile& rf) {
                 mod_mul_reverse(rf.get(x_reg), rf.get(y_reg), rf.get(out_reg), p, *lp);
                 rf.set(out_reg, 0);
               }};
}

}  // namespace ecdl
