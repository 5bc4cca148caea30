#include "ecdl/resource_model.hpp"

#include <cmath>

#include "ecdl/errors.hpp"

namespace ecdl {

TimeEstimate time_estimate(unsigned n, bool sharing) {
  if (n < 8) throw domain_fault("time_estimate needs n >= 8");
  TimeEstimate t;
  t.n = n;
  t.sharing = sharing;
  double nn = n;
  // average width of the Euclid-pair additions across a run
  double w = sharing ? nn / 2 + 2 * std::sqrt(nn) : nn;
  // 2n group shifts, each: 5 constant additions + 3n (squaring) +
  // 2 divisions of [6n (two multiplications) + 2 Euclid runs of 4.5n cycles
  // at 5 w-bit additions per cycle]; everything at the quantum-quantum rate.
  double per_euclid = 4.5 * (5 * w);
  t.nbit_additions_exact = 2 * nn * (5 + 3 * nn + 2 * (6 * nn + 2 * per_euclid)) * 1.7;
  t.nbit_additions_rounded =
      sharing ? 205 * nn * nn + 615 * std::pow(nn, 1.5) : 360 * nn * nn;
  t.one_qubit_additions_exact = t.nbit_additions_exact * nn;
  t.one_qubit_additions_rounded = t.nbit_additions_rounded * nn;
  return t;
}

QubitEstimate qubit_estimate(unsigned n, bool sharing, double epsilon) {
  if (n < 8) throw domain_fault("qubit_estimate needs n >= 8");
  QubitEstimate q;
  q.n = n;
  q.sharing = sharing;
  q.epsilon = epsilon;
  double nn = n;
  q.point_registers = 2 * nn;
  q.euclid_pairs = sharing ? 2 * nn + 8 * std::sqrt(nn) : 4 * nn;
  q.carry = nn;
  q.quotient_and_index = 4 * std::log2(nn);
  q.misc = epsilon;
  q.total = q.point_registers + q.euclid_pairs + q.carry + q.quotient_and_index + q.misc;
  return q;
}

FactoringEstimate factoring_comparison(unsigned n_rsa) {
  if (n_rsa < 512) throw domain_fault("factoring comparison starts at n = 512");
  FactoringEstimate f;
  f.n = n_rsa;
  f.qubits = 2.0 * n_rsa;
  f.time = 4.0 * std::pow(static_cast<double>(n_rsa), 3.0);
  return f;
}

std::vector<ComparisonRow> comparison_table() {
  // printed values of the security-equivalence comparison, as displayed
  struct Printed {
    unsigned rsa_n, ecc_n;
    const char* effort;
    double rsa_qubits, rsa_time, ecc_q_share, ecc_q_plain, ecc_time;
  };
  static const Printed rows[] = {
      {512, 110, "C", 1024, 0.54e9, 700, 800, 0.5e9},
      {1024, 163, "C*10^8", 2048, 4.3e9, 1000, 1200, 1.6e9},
      {2048, 224, "C*10^17", 4096, 34e9, 1300, 1600, 4.0e9},
      {3072, 256, "C*10^22", 6144, 120e9, 1500, 1800, 6.0e9},
      {15360, 512, "C*10^60", 30720, 1.5e13, 2800, 3600, 50e9},
  };
  std::vector<ComparisonRow> out;
  for (const Printed& pr : rows) {
    ComparisonRow r;
    r.rsa_n = pr.rsa_n;
    r.ecc_n = pr.ecc_n;
    r.classical_effort = pr.effort;
    r.rsa_qubits_printed = pr.rsa_qubits;
    r.rsa_time_printed = pr.rsa_time;
    r.ecc_qubits_sharing_printed = pr.ecc_q_share;
    r.ecc_qubits_plain_printed = pr.ecc_q_plain;
    r.ecc_time_printed = pr.ecc_time;
    FactoringEstimate f = factoring_comparison(pr.rsa_n);
    r.rsa_qubits_computed = f.qubits;
    r.rsa_time_computed = f.time;
    r.ecc_qubits_sharing_computed = qubit_estimate(pr.ecc_n, true).total;
    r.ecc_qubits_plain_computed = qubit_estimate(pr.ecc_n, false).total;
    r.ecc_time_computed = time_estimate(pr.ecc_n, false).one_qubit_additions_rounded;
    out.push_back(r);
  }
  return out;
}

}  // namespace ecdl
