#pragma once

#include <cstdint>

namespace ecdl {

// Additive cost accounting in units of 1-qubit additions.
//
// Conventions, fixed once:
//   w-bit classical-quantum ADD/SUB   -> w units
//   w-bit quantum-quantum ADD/SUB     -> 1.7 * w units
//   w-bit compare-to-zero             -> w units
//   w-bit SWAP                        -> 0.2 * w units
// The quantum-quantum factor and the per-class weights are recorded in the
// breakdown so alternates can re-weight without touching simulation code.
struct CostLedger {
  static constexpr double kQuantumQuantumFactor = 1.7;
  static constexpr double kSwapWeight = 0.2;

  double cq_add_units = 0;    // classical-quantum additions/subtractions
  double qq_add_units = 0;    // quantum-quantum additions/subtractions
  double compare_units = 0;   // compare-to-zero
  double swap_units = 0;      // register swaps

  std::uint64_t cq_add_ops = 0;
  std::uint64_t qq_add_ops = 0;
  std::uint64_t compare_ops = 0;
  std::uint64_t swap_ops = 0;

  void charge_cq_add(double width_bits, std::uint64_t count = 1) {
    cq_add_units += width_bits * static_cast<double>(count);
    cq_add_ops += count;
  }
  void charge_qq_add(double width_bits, std::uint64_t count = 1) {
    qq_add_units += kQuantumQuantumFactor * width_bits * static_cast<double>(count);
    qq_add_ops += count;
  }
  void charge_compare(double width_bits, std::uint64_t count = 1) {
    compare_units += width_bits * static_cast<double>(count);
    compare_ops += count;
  }
  void charge_swap(double width_bits, std::uint64_t count = 1) {
    swap_units += kSwapWeight * width_bits * static_cast<double>(count);
    swap_ops += count;
  }

  double one_qubit_additions() const {
    return cq_add_units + qq_add_units + compare_units + swap_units;
  }

  CostLedger& operator+=(const CostLedger& o) {
    cq_add_units += o.cq_add_units;
    qq_add_units += o.qq_add_units;
    compare_units += o.compare_units;
    swap_units += o.swap_units;
    cq_add_ops += o.cq_add_ops;
    qq_add_ops += o.qq_add_ops;
    compare_ops += o.compare_ops;
    swap_ops += o.swap_ops;
    return *this;
  }

  friend CostLedger operator+(CostLedger a, const CostLedger& b) { return a += b; }

  friend bool operator==(const CostLedger& a, const CostLedger& b) {
    return a.cq_add_units == b.cq_add_units && a.qq_add_units == b.qq_add_units &&
           a.compare_units == b.compare_units && a.swap_units == b.swap_units &&
           a.cq_add_ops == b.cq_add_ops && a.qq_add_ops == b.qq_add_ops &&
           a.compare_ops == b.compare_ops && a.swap_ops == b.swap_ops;
  }
};

}  // namespace ecdl
