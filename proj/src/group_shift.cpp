#include "ecdl/group_shift.hpp"

#include <cmath>

#include "ecdl/mod_ops.hpp"
#include "ecdl/rng.hpp"

namespace ecdl {

ShiftTable build_shift_table(const DlpInstance& inst, unsigned n) {
  ShiftTable t;
  Point p_mult = inst.base;
  Point q_mult = inst.target;
  for (unsigned i = 0; i < n; ++i) {
    if (p_mult.infinity || q_mult.infinity)
      throw domain_fault("shift table entry collapsed to the identity");
    t.p_multiples.push_back(p_mult);
    t.q_multiples.push_back(q_mult);
    p_mult = point_add(p_mult, p_mult, inst.curve);
    q_mult = point_add(q_mult, q_mult, inst.curve);
  }
  return t;
}

namespace {

// One Euclid machine pass plus the inverse-correction bookkeeping. Returns
// the corrected inverse while keeping the machine (with its garbage: halting
// counter, correction sign, +-p remnants) alive for the paired backward run.
struct PairedEuclid {
  EuclidMachine machine;
  EuclidMachine::State initial;

  PairedEuclid(const Int& x, const Int& p, const ResolvedConfig& rc)
      : machine(x, p, rc), initial(machine.state()) {
    machine.enable_quotient_recording(false);
  }

  Int forward_inverse(const Int& p) {
    machine.run_forward();
    Int raw = machine.raw_magnitude();
    if (machine.raw_negative()) raw = -raw;
    return raw < 0 ? Int(raw + p) : raw;
  }

  void backward_restore() {
    machine.run_backward();
    if (!(machine.state() == initial))
      throw irreversible_fault("paired Euclid runs left dirty ancillae");
  }
};

long garbage_bits_for(const ResolvedConfig& rc) {
  // halting counter width plus the termination-branch sign bit
  long h_bits = static_cast<long>(std::ceil(std::log2(static_cast<double>(rc.cycle_budget) + 1)));
  return h_bits + 1;
}

}  // namespace

Int div_quantum(const Int& x, const Int& y, const Int& p, CostLedger& ledger,
                const MachineConfig& cfg) {
  Int xx = mod_floor(x, p);
  Int yy = mod_floor(y, p);
  if (xx == 0) throw domain_fault("div_quantum: divisor is zero");
  ResolvedConfig rc = resolve_config(p, cfg);
  PairedEuclid euclid(xx, p, rc);
  Int inv = euclid.forward_inverse(p);          // E: x -> 1/x (garbage kept)
  Int z = mod_mul(inv, yy, p, ledger);          // m: produce y/x
  euclid.backward_restore();                    // E backward: 1/x -> x, garbage consumed
  mod_mul_reverse(xx, z, yy, p, ledger);        // m backward: clear y (y = x*z)
  ledger += euclid.machine.ledger();
  return z;
}

Int div_quantum_reverse(const Int& x, const Int& z, const Int& p, CostLedger& ledger,
                        const MachineConfig& cfg) {
  Int xx = mod_floor(x, p);
  Int zz = mod_floor(z, p);
  if (xx == 0) throw domain_fault("div_quantum_reverse: divisor is zero");
  ResolvedConfig rc = resolve_config(p, cfg);
  Int y = mod_mul(xx, zz, p, ledger);           // m2: y = x z
  PairedEuclid euclid(xx, p, rc);
  Int inv = euclid.forward_inverse(p);          // E: x -> 1/x
  mod_mul_reverse(inv, y, zz, p, ledger);       // m1 backward: clear z (z = y/x)
  euclid.backward_restore();                    // E backward
  ledger += euclid.machine.ledger();
  return y;
}

CostLedger euclid_run_cost(const Int& p, const MachineConfig& cfg) {
  // gate schedule is value independent: charge the per-cycle widths directly
  ResolvedConfig rc = resolve_config(p, cfg);
  CostLedger ledger;
  double n = static_cast<double>(rc.n);
  for (long r = 0; r < rc.cycle_budget; ++r) {
    double w_rem = n, w_coef = n;
    if (rc.sharing) {
      double m = static_cast<double>(rc.sharing_margin_bits);
      double rr = static_cast<double>(r);
      w_rem = std::min(n, std::max(1.0, n - rr / 3.5 + m));
      w_coef = std::min(n, std::max(1.0, rr / 3.5 + m));
    }
    ledger.charge_qq_add(w_rem, 2);
    ledger.charge_qq_add(w_coef, 2);
    ledger.charge_compare(w_rem);
    ledger.charge_swap(w_rem + w_coef);
  }
  return ledger;
}

CostLedger shift_circuit_cost(const Int& p, const MachineConfig& cfg) {
  CostLedger mul;
  unsigned n = bit_length(p);
  mul.charge_qq_add(n, 3ull * n);  // one modular multiplication: 3n additions
  CostLedger euclid = euclid_run_cost(p, cfg);
  CostLedger div = euclid + euclid + mul + mul;  // two Euclid passes, two multiplies
  CostLedger shift = div + div + mul;            // two divisions and the lambda^2 multiply
  shift.charge_cq_add(n, 5);                     // the five constant additions
  return shift;
}

ShiftOutcome group_shift(const Point& S, const Point& shift, const CurveParams& curve,
                         const MachineConfig& cfg) {
  if (S.infinity) {
    ShiftOutcome out{S, ExceptionalCase::InvolvesInfinity, shift_circuit_cost(curve.p, cfg), 0};
    out.garbage_bits = garbage_bits_for(resolve_config(curve.p, cfg));
    return out;
  }
  if (shift.infinity) throw domain_fault("group shift constant must be finite");
  const Int& p = curve.p;
  ShiftOutcome out;
  out.garbage_bits = garbage_bits_for(resolve_config(p, cfg));
  if (S.x == shift.x) {
    out.result = S;  // registers untouched; the measure of these states is the loss
    out.lost = (S.y == shift.y) ? ExceptionalCase::Doubling : ExceptionalCase::InversePair;
    out.ledger = shift_circuit_cost(p, cfg);
    return out;
  }
  const Int& alpha = shift.x;
  const Int& beta = shift.y;
  CostLedger& L = out.ledger;
  // x,y -> x-a, y-beta (two constant additions)
  Int x1 = mod_floor(S.x - alpha, p);
  Int y1 = mod_floor(S.y - beta, p);
  L.charge_cq_add(bit_length(p), 2);
  // lambda = (y - beta)/(x - alpha), uncomputing y in the process
  Int lambda = div_quantum(x1, y1, p, L, cfg);
  // x-register update: x'-alpha = lambda^2 - (x-alpha) - 3 alpha
  // (one multiplication for the squaring, one constant addition)
  Int lam_sq = mod_mul(lambda, lambda, p, L);
  Int x2 = mod_floor(lam_sq - x1 - 3 * alpha, p);
  L.charge_cq_add(bit_length(p), 1);
  // negate lambda (sign bookkeeping, free) and run the division backwards:
  // y'+beta = -lambda * (x'-alpha), clearing the lambda register
  Int neg_lambda = mod_floor(-lambda, p);
  Int y2;
  if (x2 == 0) {
    // S = -2A: the result lands on x' = alpha. The multiplication makes
    // y'+beta = 0 correctly, but the inner Euclid pass runs on a zero
    // divisor and cannot clear the lambda register: the point registers
    // finish exact while the basis state keeps ancilla residue.
    y2 = 0;
    out.lost = ExceptionalCase::AncillaResidue;
    CostLedger euclid = euclid_run_cost(p, cfg);
    L += euclid;
    L += euclid;
    L.charge_qq_add(bit_length(p), 3ull * bit_length(p));
    L.charge_qq_add(bit_length(p), 3ull * bit_length(p));
  } else {
    y2 = div_quantum_reverse(x2, neg_lambda, p, L, cfg);
  }
  // x'-alpha, y'+beta -> x', y' (two constant additions)
  Int x3 = mod_floor(x2 + alpha, p);
  Int y3 = mod_floor(y2 - beta, p);
  L.charge_cq_add(bit_length(p), 2);
  out.result = Point::affine(x3, y3);
  return out;
}

ShiftOutcome group_shift_reverse(const Point& S_out, const Point& shift,
                                 const CurveParams& curve, const MachineConfig& cfg) {
  if (S_out.infinity || shift.infinity) throw domain_fault("reverse shift needs finite points");
  const Int& p = curve.p;
  const Int& alpha = shift.x;
  const Int& beta = shift.y;
  if (S_out.x == alpha)
    throw domain_fault("reverse of an exceptional shift result is not locally computable");
  ShiftOutcome out;
  out.garbage_bits = garbage_bits_for(resolve_config(p, cfg));
  CostLedger& L = out.ledger;
  Int x2 = mod_floor(S_out.x - alpha, p);
  Int y2 = mod_floor(S_out.y + beta, p);
  L.charge_cq_add(bit_length(p), 2);
  Int neg_lambda = div_quantum(x2, y2, p, L, cfg);  // -(y'+b)/(x'-a) = -lambda... negated next
  Int lambda = mod_floor(-neg_lambda, p);
  Int lam_sq = mod_mul(lambda, lambda, p, L);
  Int x1 = mod_floor(lam_sq - x2 - 3 * alpha, p);  // the squaring step is an involution
  L.charge_cq_add(bit_length(p), 1);
  Int y1 = div_quantum_reverse(x1, lambda, p, L, cfg);
  Int x0 = mod_floor(x1 + alpha, p);
  Int y0 = mod_floor(y1 + beta, p);
  L.charge_cq_add(bit_length(p), 2);
  out.result = Point::affine(x0, y0);
  return out;
}

ShiftOutcome controlled_shift(bool control, const Point& S, const Point& shift,
                              const CurveParams& curve, const MachineConfig& cfg) {
  if (control) return group_shift(S, shift, curve, cfg);
  ShiftOutcome out;
  out.result = S;
  out.ledger = shift_circuit_cost(curve.p, cfg);  // gates run regardless of the control value
  out.garbage_bits = garbage_bits_for(resolve_config(curve.p, cfg));
  return out;
}

FidelityAudit fidelity_audit(const DlpInstance& inst, unsigned n, std::uint64_t trials,
                             std::uint64_t seed) {
  if (inst.q > (1 << 20)) throw domain_fault("fidelity_audit needs q <= 2^20");
  if (trials == 0) throw domain_fault("fidelity_audit needs trials > 0");
  std::uint64_t q = to_u64(inst.q);
  std::uint64_t d = to_u64(inst.d);
  // shift constants in dlog space: 2^i and 2^i d mod q, high bit first
  std::vector<std::uint64_t> shifts;
  std::uint64_t pw = 1;
  std::vector<std::uint64_t> pow2q(n);
  for (unsigned i = 0; i < n; ++i) {
    pow2q[i] = pw;
    pw = (pw * 2) % q;
  }
  for (unsigned i = n; i-- > 0;) shifts.push_back(pow2q[i]);
  for (unsigned i = n; i-- > 0;) shifts.push_back((pow2q[i] * (d % q)) % q);

  FidelityAudit audit;
  audit.trials = trials;
  audit.n = n;
  audit.q = inst.q;
  audit.predicted = 4.0 * static_cast<double>(n) / static_cast<double>(q);
  Rng root(seed);
  double sum = 0, sumsq = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = root.split(0x666964ull, t);
    std::uint64_t s = 1 + rng.below(q - 1);  // random offset k P != O
    std::uint64_t hits = 0;
    for (std::uint64_t sh : shifts) {
      bool inverse_exposed = (s == (q - sh) % q);
      if (s == sh || inverse_exposed) ++hits;
      if (rng.next_bit()) {
        std::uint64_t prev = s;
        s = (s + sh) % q;
        if (s == 0) {
          ++audit.zero_entries;
          if (prev == (q - sh) % q) ++audit.zero_entries_via_inverse;
        }
      }
    }
    sum += static_cast<double>(hits);
    sumsq += static_cast<double>(hits) * static_cast<double>(hits);
  }
  double m = static_cast<double>(trials);
  audit.mean_loss = sum / m;
  double var = std::max(0.0, sumsq / m - audit.mean_loss * audit.mean_loss);
  audit.std_error = std::sqrt(var / m);
  return audit;
}

}  // namespace ecdl
