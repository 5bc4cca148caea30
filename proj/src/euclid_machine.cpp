#include "ecdl/euclid_machine.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include "ecdl/primes.hpp"

namespace ecdl {

namespace detail {

inline bool test_bit(const Int& v, unsigned i) { return mpz_tstbit(v.get_mpz_t(), i) != 0; }
inline bool test_bit(std::uint64_t v, unsigned i) { return (v >> i) & 1u; }

inline Int shl(const Int& v, unsigned i) { return v << i; }
inline std::uint64_t shl(std::uint64_t v, unsigned i) { return v << i; }

inline Int to_int(const Int& v) { return v; }
inline Int to_int(std::uint64_t v) { return Int(static_cast<unsigned long>(v)); }

inline std::string to_hex(const Int& v) { return v.get_str(16); }
inline std::string to_hex(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace detail

ResolvedConfig resolve_config(const Int& p, const MachineConfig& cfg) {
  ResolvedConfig rc;
  rc.n = bit_length(p);
  if (rc.n < 2) throw domain_fault("modulus too small");
  double n = static_cast<double>(rc.n);
  rc.quotient_cap_bits = cfg.quotient_cap_bits
                             ? cfg.quotient_cap_bits
                             : static_cast<unsigned>(std::max(1.0, std::ceil(3 * std::log2(n))));
  long default_budget = static_cast<long>(std::ceil(4.5 * n));
  rc.cycle_budget = cfg.cycle_budget ? cfg.cycle_budget : default_budget;
  if (rc.cycle_budget < default_budget)
    throw domain_fault("cycle budget below the 4.5 n worst-case bound");
  rc.sharing_margin_bits = cfg.sharing_margin_bits
                               ? cfg.sharing_margin_bits
                               : static_cast<unsigned>(std::ceil(2 * std::sqrt(n)));
  rc.sharing = cfg.sharing;
  return rc;
}

template <typename ValueT>
EuclidMachineT<ValueT>::EuclidMachineT(const ValueT& x, const ValueT& p, const ResolvedConfig& rc)
    : p_(p), rc_(rc) {
  st_.a = SignedReg{false, ValueT{0}};
  st_.b = SignedReg{false, ValueT{1}};
  st_.A = p;
  st_.B = x;
  st_.i = 0;
  st_.q = ValueT{0};
  st_.h = 0;
  st_.cf = SchedulerState{1, 1};
}

template <typename ValueT>
bool EuclidMachineT<ValueT>::op_first(int slot, const State& s) const {
  switch (slot) {
    case 1: return s.i == 0;          // start of doubling series
    case 2: return s.q == ValueT{0};  // no quotient bits yet
    case 3: return s.i == 0;          // bits consumed from i = 0
    case 4: {
      // |a-qb| < 2^{i_pre} |b| marks the series start. Equality is reachable
      // (|a| = |b| = 1 after a leading quotient of 1, or a = 0 with an exact
      // power-of-two quotient) and the two cases carry opposite b signs, so
      // the tie breaks on the sign of b.
      ValueT window = detail::shl(s.b.mag, s.i);
      if (s.a.mag != window) return s.a.mag < window;
      return s.b.neg;
    }
    default: return true;
  }
}

template <typename ValueT>
bool EuclidMachineT<ValueT>::op_last(int slot, const State& s) const {
  switch (slot) {
    case 1: return detail::shl(s.B, s.i) > s.A;  // window exceeds dividend
    case 2: return s.i == 0;
    case 3: return s.q == ValueT{0};
    case 4: return s.i == 0;
    default: return true;
  }
}

template <typename ValueT>
void EuclidMachineT<ValueT>::op_forward(int slot, State& s) {
  switch (slot) {
    case 1:
      s.i += 1;
      break;
    case 2: {
      s.i -= 1;
      ValueT window = detail::shl(s.B, s.i);
      // trial subtraction: kept when nonnegative (q_i = 1), undone otherwise
      if (s.A >= window) {
        s.A -= window;
        s.q += detail::shl(ValueT{1}, s.i);
      }
      if (s.i == 0) {  // series complete: full quotient visible exactly here
        if (record_quotients_) quotients_.push_back(s.q);
        if (!failure_ && bit_length(s.q) > rc_.quotient_cap_bits)
          failure_ = ModeledFailure::BoundedQuotientOverflow;
      }
      break;
    }
    case 3: {
      if (detail::test_bit(s.q, s.i)) {
        s.a.mag += detail::shl(s.b.mag, s.i);
        s.a.neg = !s.b.neg;  // a - 2^i b: magnitudes add, sign opposite to b
        s.q -= detail::shl(ValueT{1}, s.i);
      }
      s.i += 1;
      break;
    }
    case 4:
      s.i -= 1;
      break;
    case 5:
      std::swap(s.a, s.b);
      std::swap(s.A, s.B);
      boundary_asserts();
      if (record_quotients_ && !quotients_.empty()) {
        // the consumed quotient is recomputable from the first components:
        // |a-qb| = |a| + q|b| with |a| <= |b| (equality only at |b| = 1)
        ValueT prod = quotients_.back() * s.a.mag;
        bool ok = false;
        if (s.b.mag >= prod) {
          ValueT rem = s.b.mag - prod;
          ok = rem < s.a.mag || (rem == s.a.mag && s.a.mag == ValueT{1});
        }
        if (!ok) throw simulation_fault("boundary: quotient uncompute identity violated");
      }
      break;
    default:
      throw simulation_fault("bad op slot");
  }
}

template <typename ValueT>
void EuclidMachineT<ValueT>::op_backward(int slot, State& s) {
  switch (slot) {
    case 1:
      s.i -= 1;
      break;
    case 2: {
      if (detail::test_bit(s.q, s.i)) {
        s.A += detail::shl(s.B, s.i);
        s.q -= detail::shl(ValueT{1}, s.i);
      }
      s.i += 1;
      break;
    }
    case 3: {
      s.i -= 1;
      ValueT window = detail::shl(s.b.mag, s.i);
      // q_i is recomputed from the post state: bits below i were consumed, so
      // |a| >= 2^i |b| iff this step subtracted. At equality the same sign
      // tie-break as op4's first check applies (bit set iff b positive).
      bool bit = (s.a.mag != window) ? (s.a.mag > window) : !s.b.neg;
      if (bit) {
        s.a.mag -= window;
        if (s.a.mag == ValueT{0}) s.a.neg = false;
        s.q += detail::shl(ValueT{1}, s.i);
      }
      break;
    }
    case 4:
      s.i += 1;
      break;
    case 5:
      boundary_asserts();
      std::swap(s.a, s.b);
      std::swap(s.A, s.B);
      break;
    default:
      throw simulation_fault("bad op slot");
  }
}

template <typename ValueT>
void EuclidMachineT<ValueT>::boundary_asserts() const {
  const State& s = st_;
  // iteration-boundary invariants (post SWAP ordering)
  if (!(s.A > s.B)) throw simulation_fault("boundary: pair ordering A > B violated");
  ValueT cross = s.b.mag * s.A + s.a.mag * s.B;
  if (cross != p_) throw simulation_fault("boundary: |bA - aB| = p violated");
  if (s.a.mag != ValueT{0} && s.b.mag != ValueT{0} && s.a.neg == s.b.neg)
    throw simulation_fault("boundary: coefficient signs must oppose");
  if (s.a.mag * s.A > p_ || s.b.mag * s.B > p_)
    throw simulation_fault("boundary: coefficient-remainder product bound violated");
}

template <typename ValueT>
void EuclidMachineT<ValueT>::charge_cycle(long r) {
  double n = static_cast<double>(rc_.n);
  double w_rem = n, w_coef = n;
  if (rc_.sharing) {
    double m = static_cast<double>(rc_.sharing_margin_bits);
    double rr = static_cast<double>(r);
    w_rem = std::min(n, std::max(1.0, n - rr / 3.5 + m));
    w_coef = std::min(n, std::max(1.0, rr / 3.5 + m));
  }
  // per cycle: 4 w-bit quantum-quantum add/subs (two on remainder-width
  // registers, two on coefficient-width), the halting compare, and the SWAP
  ledger_.charge_qq_add(w_rem, 2);
  ledger_.charge_qq_add(w_coef, 2);
  ledger_.charge_compare(w_rem);
  ledger_.charge_swap(w_rem + w_coef);
}

template <typename ValueT>
void EuclidMachineT<ValueT>::check_sharing(long r) {
  if (!rc_.sharing || failure_) return;
  double n = static_cast<double>(rc_.n);
  double m = static_cast<double>(rc_.sharing_margin_bits);
  double rr = static_cast<double>(r);
  double budget_rem = std::min(n, n - rr / 3.5 + m);
  double budget_coef = std::min(n, rr / 3.5 + m);
  double eps = 1e-9;
  if (bit_length(st_.A) > budget_rem + eps || bit_length(st_.B) > budget_rem + eps ||
      bit_length(st_.a.mag) > budget_coef + eps || bit_length(st_.b.mag) > budget_coef + eps)
    failure_ = ModeledFailure::SharingOverflow;
}

template <typename ValueT>
void EuclidMachineT<ValueT>::record_trace_row(int slot, long cycle) {
  if (!trace_on_) return;
  const State& s = st_;
  std::string regs;
  regs += (s.a.neg ? "-" : "") + detail::to_hex(s.a.mag);
  regs += "," + detail::to_hex(s.A);
  regs += "," + std::string(s.b.neg ? "-" : "") + detail::to_hex(s.b.mag);
  regs += "," + detail::to_hex(s.B);
  regs += "," + detail::to_hex(static_cast<std::uint64_t>(s.i));
  regs += "," + detail::to_hex(s.q);
  regs += "," + detail::to_hex(static_cast<std::uint64_t>(s.h));
  trace_.push_back(TraceRow{steps_, cycle, slot, s.cf.c, s.cf.f, regs,
                            ledger_.one_qubit_additions()});
}

template <typename ValueT>
void EuclidMachineT<ValueT>::cycle_forward() {
  charge_cycle(cycles_done_);
  EuclidOps ops{this};
  if (st_.B == ValueT{0}) {
    st_.h += 1;  // halted: only the completion counter moves
    ++steps_;
    record_trace_row(0, cycles_done_);
  } else {
    check_sharing(cycles_done_);
    for (int slot = 1; slot <= 5; ++slot) {
      schedule_slot_forward(ops, st_, st_.cf, slot);
      ++steps_;
      record_trace_row(slot, cycles_done_);
    }
  }
  ++cycles_done_;
}

template <typename ValueT>
void EuclidMachineT<ValueT>::cycle_backward() {
  --cycles_done_;
  charge_cycle(cycles_done_);  // reversal accrues equal cost
  EuclidOps ops{this};
  if (st_.B == ValueT{0} && st_.h > 0) {
    st_.h -= 1;
  } else {
    for (int slot = 5; slot >= 1; --slot) schedule_slot_backward(ops, st_, st_.cf, slot);
  }
}

template <typename ValueT>
void EuclidMachineT<ValueT>::run_forward() {
  for (long c = 0; c < rc_.cycle_budget; ++c) cycle_forward();
  if (st_.B != ValueT{0})
    throw simulation_fault("machine did not terminate within the cycle budget");
}

template <typename ValueT>
void EuclidMachineT<ValueT>::run_backward() {
  for (long c = 0; c < rc_.cycle_budget; ++c) cycle_backward();
}

template class EuclidMachineT<Int>;
template class EuclidMachineT<std::uint64_t>;

namespace {

template <typename ValueT>
InverseResult assemble_result(EuclidMachineT<ValueT>& m, const Int& p) {
  InverseResult res;
  res.cycle_budget = m.config().cycle_budget;
  res.halting_count = m.state().h;
  res.cycles_used = m.config().cycle_budget - m.state().h;
  res.correction_flag = m.raw_negative();
  Int raw = detail::to_int(m.raw_magnitude());
  if (m.raw_negative()) raw = -raw;
  res.raw_output = raw;
  res.inverse = raw < 0 ? Int(raw + p) : raw;
  res.ledger = m.ledger();
  res.failure = m.failure();
  for (const auto& q : m.quotients()) res.quotients.push_back(detail::to_int(q));
  res.trace = m.take_trace();
  return res;
}

}  // namespace

InverseResult run_inverse(const Int& x, const Int& p, const MachineConfig& cfg) {
  if (x <= 0 || x >= p) throw domain_fault("need 0 < x < p");
  Int g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
  if (g != 1) throw domain_fault("x not invertible mod p");
  ResolvedConfig rc = resolve_config(p, cfg);
  InverseResult res;
  if (rc.n <= 30 && !cfg.record_trace) {
    EuclidMachineSmall m(to_u64(x), to_u64(p), rc);
    m.enable_quotient_recording(cfg.record_quotients);
    m.run_forward();
    res = assemble_result(m, p);
  } else {
    EuclidMachine m(x, p, rc);
    m.enable_quotient_recording(cfg.record_quotients);
    m.enable_trace(cfg.record_trace);
    m.run_forward();
    res = assemble_result(m, p);
  }
  if (mod_floor(res.inverse * x, p) != 1)
    throw simulation_fault("machine produced a wrong inverse");
  return res;
}

bool check_reverse_replay(const Int& x, const Int& p, const MachineConfig& cfg) {
  ResolvedConfig rc = resolve_config(p, cfg);
  if (rc.n <= 30) {
    EuclidMachineSmall m(to_u64(x), to_u64(p), rc);
    auto initial = m.state();
    m.run_forward();
    m.run_backward();
    return m.state() == initial;
  }
  EuclidMachine m(x, p, rc);
  auto initial = m.state();
  m.run_forward();
  m.run_backward();
  return m.state() == initial;
}

std::vector<Int> classical_quotients(const Int& p, const Int& x) {
  std::vector<Int> qs;
  Int A = p, B = x;
  while (B != 0) {
    Int q = A / B;
    Int r = A - q * B;
    qs.push_back(q);
    A = B;
    B = r;
  }
  return qs;
}

long cycle_count(const Int& p, const Int& x) {
  if (x <= 0 || x >= p) throw domain_fault("need 0 < x < p");
  long t = 0;
  if (fits_u64(p)) {
    std::uint64_t A = to_u64(p), B = to_u64(x);
    while (B != 0) {
      std::uint64_t q = A / B, r = A % B;
      t += 4 * (static_cast<long>(bit_length(q)) - 1) + 1;
      A = B;
      B = r;
    }
  } else {
    for (const Int& q : classical_quotients(p, x))
      t += 4 * (static_cast<long>(bit_length(q)) - 1) + 1;
  }
  return t;
}

GcdTrace gcd_trace(const Int& a, const Int& b) {
  if (a <= 0 || b <= 0) throw domain_fault("gcd_trace needs positive inputs");
  GcdTrace out;
  Int A = a, B = b;
  // divide the larger by the smaller, in place, until one side reaches zero
  while (A != 0 && B != 0) {
    if (A >= B) {
      out.quotients.push_back(A / B);
      A = A % B;
    } else {
      out.quotients.push_back(B / A);
      B = B % A;
    }
  }
  out.gcd = A != 0 ? A : B;
  return out;
}

BoundReport verify_bound(std::uint64_t p_max) {
  if (p_max > 100000) throw domain_fault("verify_bound capped at p_max = 1e5");
  BoundReport rep;
  for (std::uint64_t p = 3; p <= p_max; ++p) {
    double log2p = std::log2(static_cast<double>(p));
    double bound = 4.5 * log2p + 1e-9;
    for (std::uint64_t x = 1; x < p; ++x) {
      std::uint64_t A = p, B = x;
      long t = 0;
      while (B != 0) {
        std::uint64_t q = A / B, r = A % B;
        t += 4 * (static_cast<long>(bit_length(q)) - 1) + 1;
        A = B;
        B = r;
      }
      if (A != 1) continue;  // not coprime
      ++rep.pairs_checked;
      double ratio = static_cast<double>(t) / log2p;
      if (ratio > rep.max_ratio) {
        rep.max_ratio = ratio;
        rep.argmax_p = p;
        rep.argmax_x = x;
        rep.argmax_t = t;
      }
      if (static_cast<double>(t) > bound) ++rep.violations;
    }
  }
  return rep;
}

}  // namespace ecdl
