#pragma once

#include <string>
#include <vector>

#include "ecdl/bigint.hpp"
#include "ecdl/errors.hpp"

namespace ecdl {

// Named word-level registers with fixed declared widths. A value that does
// not fit its width is a hard simulation fault: modeled fidelity losses are
// tracked elsewhere, explicitly, so a width violation here always means a
// machine-definition bug. Signed registers are sign-magnitude: the magnitude
// must fit the declared width, the sign occupies one extra conceptual bit.
class RegisterFile {
 public:
  struct Reg {
    std::string name;
    unsigned width_bits;
    bool is_signed;
    Int value;
  };

  void define(const std::string& name, unsigned width_bits, bool is_signed = false,
              const Int& initial = 0) {
    if (find(name) >= 0) throw simulation_fault("duplicate register: " + name);
    regs_.push_back({name, width_bits, is_signed, 0});
    set(name, initial);
  }

  const Int& get(const std::string& name) const { return regs_[index(name)].value; }

  void set(const std::string& name, const Int& v) {
    Reg& r = regs_[index(name)];
    if (!r.is_signed && v < 0)
      throw simulation_fault("negative value in unsigned register " + name);
    if (bit_length(v) > r.width_bits)
      throw simulation_fault("width overflow in register " + name + ": " + to_dec(v) + " needs " +
                             std::to_string(bit_length(v)) + " bits, declared " +
                             std::to_string(r.width_bits));
    r.value = v;
  }

  bool has(const std::string& name) const { return find(name) >= 0; }
  const std::vector<Reg>& registers() const { return regs_; }

  friend bool operator==(const RegisterFile& a, const RegisterFile& b) {
    if (a.regs_.size() != b.regs_.size()) return false;
    for (size_t i = 0; i < a.regs_.size(); ++i) {
      if (a.regs_[i].name != b.regs_[i].name || a.regs_[i].value != b.regs_[i].value) return false;
    }
    return true;
  }

 private:
  int find(const std::string& name) const {
    for (size_t i = 0; i < regs_.size(); ++i)
      if (regs_[i].name == name) return static_cast<int>(i);
    return -1;
  }
  size_t index(const std::string& name) const {
    int i = find(name);
    if (i < 0) throw simulation_fault("unknown register: " + name);
    return static_cast<size_t>(i);
  }
  std::vector<Reg> regs_;
};

}  // namespace ecdl
