#pragma once

#include <string>
#include <vector>

namespace ecdl {

// Closed-form qubit and time estimates for the discrete-log circuit, plus
// the RSA-comparison table.

struct TimeEstimate {
  unsigned n = 0;
  bool sharing = false;
  double nbit_additions_exact = 0;    // full bracketed formula
  double nbit_additions_rounded = 0;  // 360 n^2 or 205 n^2 + 615 n^{3/2}
  double one_qubit_additions_exact = 0;    // x n
  double one_qubit_additions_rounded = 0;  // 360 n^3 (table form)
};

TimeEstimate time_estimate(unsigned n, bool sharing);

struct QubitEstimate {
  unsigned n = 0;
  bool sharing = false;
  double epsilon = 10;
  double total = 0;        // f(n) or f'(n)
  double point_registers = 0;  // 2n held through the inner Euclid call
  double euclid_pairs = 0;     // 4n or 2n + 8 sqrt n
  double carry = 0;            // n
  double quotient_and_index = 0;  // 4 log2 n
  double misc = 0;                // epsilon
};

QubitEstimate qubit_estimate(unsigned n, bool sharing, double epsilon = 10);

struct FactoringEstimate {
  unsigned n = 0;
  double qubits = 0;  // 2n
  double time = 0;    // 4n^3 one-qubit additions
};

FactoringEstimate factoring_comparison(unsigned n_rsa);

// One row of the security-equivalence table. Printed values are carried
// from the reference comparison (they use the rounded display forms);
// computed values come from the formulas above.
struct ComparisonRow {
  unsigned rsa_n;
  unsigned ecc_n;
  std::string classical_effort;       // static annotation, e.g. "C * 10^8"
  double rsa_qubits_printed;
  double rsa_time_printed;            // one-qubit additions
  double ecc_qubits_sharing_printed;  // f'(n)
  double ecc_qubits_plain_printed;    // f(n)
  double ecc_time_printed;
  double rsa_qubits_computed;
  double rsa_time_computed;
  double ecc_qubits_sharing_computed;
  double ecc_qubits_plain_computed;
  double ecc_time_computed;
};

std::vector<ComparisonRow> comparison_table();

}  // namespace ecdl
