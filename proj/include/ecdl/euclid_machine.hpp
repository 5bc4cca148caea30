#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ecdl/bigint.hpp"
#include "ecdl/cost_ledger.hpp"
#include "ecdl/errors.hpp"
#include "ecdl/scheduler.hpp"

namespace ecdl {

// The desynchronized, stepwise-reversible extended-Euclid machine computing
// x^{-1} mod p. Five scheduled operations per cycle (four division phases and
// a SWAP), a halting counter h incremented once per cycle after termination,
// and addition-denominated cost accounting.

enum class ModeledFailure { BoundedQuotientOverflow, SharingOverflow };

struct MachineConfig {
  bool sharing = false;
  unsigned quotient_cap_bits = 0;  // 0 -> ceil(3 log2 n)
  long cycle_budget = 0;           // 0 -> ceil(4.5 n)
  unsigned sharing_margin_bits = 0;  // 0 -> ceil(2 sqrt n)
  bool record_quotients = true;
  bool record_trace = false;
};

struct TraceRow {
  long step;       // op-slot index within the run
  long cycle;
  int slot;        // 1..5, 0 for the halting check
  int c;
  int f;
  std::string registers_hex;  // a,A,b,B,i,q,h
  double ledger_units;
};

struct InverseResult {
  Int inverse;            // in [0, p)
  Int raw_output;         // x^{-1} or x^{-1} - p as produced
  bool correction_flag;   // which termination branch occurred
  long cycles_used;       // = t(p, x)
  long halting_count;     // h
  long cycle_budget;
  CostLedger ledger;
  std::optional<ModeledFailure> failure;
  std::vector<Int> quotients;
  std::vector<TraceRow> trace;
};

// Resolved per-run parameters.
struct ResolvedConfig {
  unsigned n;                // bit length of p
  unsigned quotient_cap_bits;
  long cycle_budget;
  unsigned sharing_margin_bits;
  bool sharing;
};

ResolvedConfig resolve_config(const Int& p, const MachineConfig& cfg);

// Runs the machine forward for the full cycle budget and assembles the
// result. Hard faults throw; modeled losses are recorded in the result.
InverseResult run_inverse(const Int& x, const Int& p, const MachineConfig& cfg = {});

// Forward run followed by a full backward replay; returns true when the
// replay restores the initial state bit-exactly (including h, f, c).
bool check_reverse_replay(const Int& x, const Int& p, const MachineConfig& cfg = {});

// t(p, x) from the classical quotient sequence, without running the machine:
// t = r + 4 * sum floor(log2 q_i).
long cycle_count(const Int& p, const Int& x);

// Classical Euclid quotient sequence for the pair (p, x).
std::vector<Int> classical_quotients(const Int& p, const Int& x);

// Classical gcd trace (divide the larger by the smaller, in place).
struct GcdTrace {
  Int gcd;
  std::vector<Int> quotients;
};
GcdTrace gcd_trace(const Int& a, const Int& b);

// Exhaustive check of t(p, x) <= 4.5 log2 p over every p in (2, p_max]
// (prime or not) and every coprime x in (0, p).
struct BoundReport {
  std::uint64_t pairs_checked = 0;
  std::uint64_t violations = 0;
  double max_ratio = 0;         // max t / log2 p
  std::uint64_t argmax_p = 0;
  std::uint64_t argmax_x = 0;
  long argmax_t = 0;
};
BoundReport verify_bound(std::uint64_t p_max);

// Internal word-level machine, exposed for step-level tests and the group
// shift (which runs one machine forward, keeps its garbage, and later runs
// the same machine backward). ValueT is the register word type: Int for the
// general path, uint64_t for small moduli.
template <typename ValueT>
class EuclidMachineT {
 public:
  struct SignedReg {  // sign-magnitude with one explicit sign bit
    bool neg = false;
    ValueT mag{0};

    friend bool operator==(const SignedReg& l, const SignedReg& r) {
      if (l.mag == ValueT{0} && r.mag == ValueT{0}) return true;
      return l.neg == r.neg && l.mag == r.mag;
    }
  };

  struct State {
    SignedReg a, b;   // coefficient registers of the two Euclidean pairs
    ValueT A{0}, B{0};  // remainder registers (pair with larger second first)
    unsigned i = 0;   // shift index
    ValueT q{0};      // quotient register (shares space with h physically)
    long h = 0;       // halting counter
    SchedulerState cf;

    friend bool operator==(const State& l, const State& r) {
      return l.a == r.a && l.b == r.b && l.A == r.A && l.B == r.B && l.i == r.i && l.q == r.q &&
             l.h == r.h && l.cf == r.cf;
    }
  };

  EuclidMachineT(const ValueT& x, const ValueT& p, const ResolvedConfig& rc);

  void run_forward();
  void run_backward();
  void cycle_forward();
  void cycle_backward();

  const State& state() const { return st_; }
  State& mutable_state() { return st_; }
  long cycles_done() const { return cycles_done_; }
  const CostLedger& ledger() const { return ledger_; }
  const std::optional<ModeledFailure>& failure() const { return failure_; }
  const std::vector<ValueT>& quotients() const { return quotients_; }
  std::vector<TraceRow>&& take_trace() { return std::move(trace_); }
  const ResolvedConfig& config() const { return rc_; }

  bool terminated() const { return st_.B == ValueT{0}; }

  // Result pieces (valid after a completed forward run).
  bool raw_negative() const { return st_.a.neg && st_.a.mag != ValueT{0}; }
  const ValueT& raw_magnitude() const { return st_.a.mag; }

  void enable_trace(bool on) { trace_on_ = on; }
  void enable_quotient_recording(bool on) { record_quotients_ = on; }

 private:
  friend struct EuclidOps;
  struct EuclidOps {  // scheduler machine concept over State
    EuclidMachineT* m;
    int op_count() const { return 5; }
    bool toggles_flag(int slot) const { return slot != 5; }
    void forward(int slot, State& s) const { m->op_forward(slot, s); }
    void backward(int slot, State& s) const { m->op_backward(slot, s); }
    bool first(int slot, const State& s) const { return m->op_first(slot, s); }
    bool last(int slot, const State& s) const { return m->op_last(slot, s); }
  };

  void op_forward(int slot, State& s);
  void op_backward(int slot, State& s);
  bool op_first(int slot, const State& s) const;
  bool op_last(int slot, const State& s) const;

  void charge_cycle(long cycles_done);
  void check_sharing(long cycles_done);
  void boundary_asserts() const;
  void record_trace_row(int slot, long cycle);

  ValueT p_;
  ResolvedConfig rc_;
  State st_;
  CostLedger ledger_;
  long cycles_done_ = 0;
  std::optional<ModeledFailure> failure_;
  std::vector<ValueT> quotients_;
  std::vector<TraceRow> trace_;
  bool trace_on_ = false;
  bool record_quotients_ = true;
  long steps_ = 0;
};

using EuclidMachine = EuclidMachineT<Int>;
using EuclidMachineSmall = EuclidMachineT<std::uint64_t>;

extern template class EuclidMachineT<Int>;
extern template class EuclidMachineT<std::uint64_t>;

}  // namespace ecdl
