#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ecdl/errors.hpp"
#include "ecdl/register_file.hpp"

namespace ecdl {

// Desynchronization: each basis state carries a flag bit f and a control
// counter c in {1..m}. The physical gate sequence cycles through the m
// operation slots; slot j applies o_j only to states with c == j, XORs f
// with first(pre) ^ last(post), and "advance counter" then maps
// (c, f) -> (c + f mod m, f) with c drawn from {1..m}.
struct SchedulerState {
  int c = 1;
  int f = 1;

  friend bool operator==(const SchedulerState& a, const SchedulerState& b) {
    return a.c == b.c && a.f == b.f;
  }
};

inline void advance_counter(SchedulerState& cf, int m) {
  cf.c = ((cf.c - 1 + cf.f) % m) + 1;
}

inline void retreat_counter(SchedulerState& cf, int m) {
  cf.c = ((cf.c - 1 - cf.f) % m + m) % m + 1;
}

// One scheduler step = one op slot followed by advance-counter. Machine M
// must provide: op_count(), forward(j, S&), backward(j, S&),
// first(j, const S&) [pre-state], last(j, const S&) [post-state], and
// toggles_flag(j) (false for SWAP-style length-one series).
template <class M, class S>
void schedule_slot_forward(const M& m, S& state, SchedulerState& cf, int slot) {
  if (cf.c == slot) {
    if (m.toggles_flag(slot)) {
      bool fst = m.first(slot, state);
      m.forward(slot, state);
      bool lst = m.last(slot, state);
      if (fst != lst) cf.f ^= 1;
    } else {
      m.forward(slot, state);
    }
  }
  advance_counter(cf, m.op_count());
}

template <class M, class S>
void schedule_slot_backward(const M& m, S& state, SchedulerState& cf, int slot) {
  retreat_counter(cf, m.op_count());
  if (cf.c == slot) {
    if (m.toggles_flag(slot)) {
      bool lst = m.last(slot, state);
      m.backward(slot, state);
      bool fst = m.first(slot, state);
      if (fst != lst) cf.f ^= 1;
    } else {
      m.backward(slot, state);
    }
  }
}

// Generic machine over a register file, for scheduler-level tests and
// machines assembled at runtime.
struct SchedOp {
  std::string name;
  std::function<void(RegisterFile&)> forward;
  std::function<void(RegisterFile&)> backward;
  std::function<bool(const RegisterFile&)> first;
  std::function<bool(const RegisterFile&)> last;
  bool toggles_flag = true;
};

class DesyncMachine {
 public:
  explicit DesyncMachine(std::vector<SchedOp> ops) : ops_(std::move(ops)) {}

  int op_count() const { return static_cast<int>(ops_.size()); }
  void forward(int j, RegisterFile& rf) const { ops_[idx(j)].forward(rf); }
  void backward(int j, RegisterFile& rf) const { ops_[idx(j)].backward(rf); }
  bool first(int j, const RegisterFile& rf) const { return pred(ops_[idx(j)].first, rf, j); }
  bool last(int j, const RegisterFile& rf) const { return pred(ops_[idx(j)].last, rf, j); }
  bool toggles_flag(int j) const { return ops_[idx(j)].toggles_flag; }
  const SchedOp& op(int j) const { return ops_[idx(j)]; }

 private:
  size_t idx(int j) const {
    if (j < 1 || j > op_count()) throw simulation_fault("op slot out of range");
    return static_cast<size_t>(j - 1);
  }
  bool pred(const std::function<bool(const RegisterFile&)>& p, const RegisterFile& rf,
            int j) const {
    if (!p) throw simulation_fault("predicate fault: op " + std::to_string(j) + " undecidable");
    return p(rf);
  }
  std::vector<SchedOp> ops_;
};

// Applies slot `slot` of the machine (conditioned on counter match), then
// advance-counter. The whole step is a bijection on (registers, c, f).
inline void schedule_step(const DesyncMachine& m, RegisterFile& rf, SchedulerState& cf,
                          int slot) {
  schedule_slot_forward(m, rf, cf, slot);
}

inline void schedule_step_reverse(const DesyncMachine& m, RegisterFile& rf, SchedulerState& cf,
                                  int slot) {
  schedule_slot_backward(m, rf, cf, slot);
}

// One full cycle through all m slots (and its exact inverse).
inline void schedule_cycle(const DesyncMachine& m, RegisterFile& rf, SchedulerState& cf) {
  for (int j = 1; j <= m.op_count(); ++j) schedule_step(m, rf, cf, j);
}

inline void schedule_cycle_reverse(const DesyncMachine& m, RegisterFile& rf, SchedulerState& cf) {
  for (int j = m.op_count(); j >= 1; --j) schedule_step_reverse(m, rf, cf, j);
}

}  // namespace ecdl
