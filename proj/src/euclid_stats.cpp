#include "ecdl/euclid_stats.hpp"

#include <algorithm>
#include <cmath>

#include "ecdl/errors.hpp"
#include "ecdl/euclid_machine.hpp"
#include "ecdl/primes.hpp"
#include "ecdl/rng.hpp"

namespace ecdl {

double perturbation_of_run(const Int& p, const Int& x, unsigned n, const PerturbMeasure& m) {
  // pairs (a,A) and (b,B), larger second component first
  Int a = 0, A = p, b = 1, B = x;
  double r = 0;
  double pert = 0;
  auto exp_rem = [&](double clock) { return static_cast<double>(n) - clock / m.slope; };
  auto exp_coef = [&](double clock) { return clock / m.slope; };
  auto consider = [&](double bits, double expected) {
    if (bits - expected > pert) pert = bits - expected;
  };
  while (B != 0) {
    Int q = A / B;
    unsigned z = bit_length(q);
    double cycles = 4.0 * (z - 1) + 1.0;
    if (m.phase1_peak)  // dividend unchanged while the comparison window doubles
      consider(bit_length(A), exp_rem(r + (z - 1)));
    Int A2 = A - q * B;
    Int a2 = a - q * b;
    bool final_iter = (A2 == 0);
    if (m.phase3_peak && !(final_iter && !m.include_final))
      consider(bit_length(a2), exp_coef(r + 3.0 * z - 2));
    r += cycles;
    a = b;
    A = B;
    b = a2;
    B = A2;
    if (final_iter && !m.include_final) break;
    if (m.boundary) {
      double clock = m.lag_clock ? r - cycles : r;
      consider(bit_length(A), exp_rem(clock));
      consider(bit_length(B), exp_rem(clock));
      consider(bit_length(a), exp_coef(clock));
      consider(bit_length(b), exp_coef(clock));
    }
  }
  return pert;
}

PerturbationStats perturbation_stats(unsigned n, std::uint64_t trials, std::uint64_t seed,
                                     const PerturbMeasure& measure, std::uint64_t group_size) {
  if (n < 8 || n > 1024) throw domain_fault("perturbation_stats needs n in [8, 1024]");
  if (trials < 1000) throw domain_fault("perturbation_stats needs at least 1000 trials");
  Rng root(seed);
  std::uint64_t groups = std::max<std::uint64_t>(1, trials / group_size);
  std::uint64_t per_group = trials / groups;
  PerturbationStats st;
  st.n = n;
  st.primes = groups;
  st.group_size = per_group;
  st.trials = groups * per_group;
  double sum = 0, sumsq = 0, global_max = 0;
  for (std::uint64_t g = 0; g < groups; ++g) {
    Rng prng = root.split(0x7072696D65ull /*"prime"*/, g);
    Int p = random_prime(n, prng);
    Rng xrng = root.split(0x78ull /*"x"*/, g);
    double group_max = 0;
    for (std::uint64_t t = 0; t < per_group; ++t) {
      Int x = 2 + xrng.random_below(p - 2);
      double pert = perturbation_of_run(p, x, n, measure);
      if (pert > group_max) group_max = pert;
    }
    sum += group_max;
    sumsq += group_max * group_max;
    if (group_max > global_max) global_max = group_max;
  }
  double g = static_cast<double>(groups);
  st.mean = sum / g;
  st.std_dev = std::sqrt(std::max(0.0, sumsq / g - st.mean * st.mean));
  st.max = global_max;
  return st;
}

PerturbationStats perturbation_stats(unsigned n, std::uint64_t trials, std::uint64_t seed) {
  return perturbation_stats(n, trials, seed, PerturbMeasure{}, 1000);
}

QuotientStats quotient_distribution(unsigned n, std::uint64_t min_samples, std::uint64_t seed) {
  if (min_samples < 100000) throw domain_fault("quotient_distribution needs >= 1e5 samples");
  QuotientStats st;
  st.n = n;
  st.cap_bits = static_cast<unsigned>(std::ceil(3 * std::log2(static_cast<double>(n))));
  st.cap_rate_model = 1.0 / std::pow(static_cast<double>(n), 3.0);
  std::vector<std::uint64_t> ge_count(65, 0);  // ge_count[q0] = #quotients >= q0
  std::uint64_t cap_hits = 0, total = 0;
  Rng root(seed);
  std::uint64_t run = 0;
  while (total < min_samples) {
    Rng rrng = root.split(0x71756F74ull, run++);
    Int p = random_prime(n, rrng);
    Int x = 2 + rrng.random_below(p - 2);
    for (const Int& q : classical_quotients(p, x)) {
      ++total;
      if (bit_length(q) > st.cap_bits) ++cap_hits;
      for (unsigned q0 = 1; q0 <= 64; ++q0) {
        if (q >= q0) ++ge_count[q0];
        else break;
      }
    }
  }
  st.total_quotients = total;
  st.tail_empirical.resize(65, 0.0);
  st.tail_model.resize(65, 0.0);
  for (unsigned q0 = 1; q0 <= 64; ++q0) {
    st.tail_empirical[q0] = static_cast<double>(ge_count[q0]) / static_cast<double>(total);
    st.tail_model[q0] = std::log2(1.0 + 1.0 / static_cast<double>(q0));
  }
  st.cap_rate_empirical = static_cast<double>(cap_hits) / static_cast<double>(total);
  return st;
}

namespace {

// Mean cycles predicted by the quotient-frequency density: the count of
// quotient values q among all runs on a prime p is proportional to
// ln((q+1)^2 / ((q+1)^2 - 1)), which integrates to ~3.5 log2 p cycles per run.
double lq_mean_prediction(double log2p) {
  const double c = 12.0 / (M_PI * M_PI);
  double acc = 0;
  for (std::uint64_t q = 1; q <= 4000000; ++q) {
    double qq = static_cast<double>(q + 1) * static_cast<double>(q + 1);
    double w = std::log(qq / (qq - 1.0));
    double cycles = 4.0 * std::floor(std::log2(static_cast<double>(q))) + 1.0;
    acc += w * cycles;
  }
  return c * acc * log2p * M_LN2;  // ln p = log2 p * ln 2
}

}  // namespace

CycleStats average_cycles(unsigned n, std::uint64_t trials, std::uint64_t seed) {
  if (trials < 1000) throw domain_fault("average_cycles needs at least 1000 trials");
  CycleStats st;
  st.n = n;
  st.trials = trials;
  st.model_3_5n = 3.5 * static_cast<double>(n);
  Rng root(seed);
  double sum = 0, sumsq = 0;
  std::uint64_t groups = std::max<std::uint64_t>(1, trials / 1000);
  std::uint64_t per_group = trials / groups;
  st.trials = groups * per_group;
  for (std::uint64_t g = 0; g < groups; ++g) {
    Rng prng = root.split(0x6379636Cull, g);
    Int p = random_prime(n, prng);
    Rng xrng = root.split(0x6379783Full, g);
    for (std::uint64_t t = 0; t < per_group; ++t) {
      Int x = 2 + xrng.random_below(p - 2);
      double tc = static_cast<double>(cycle_count(p, x));
      sum += tc;
      sumsq += tc * tc;
    }
  }
  double m = static_cast<double>(st.trials);
  st.mean = sum / m;
  st.std_dev = std::sqrt(std::max(0.0, sumsq / m - st.mean * st.mean));
  st.model_lq = lq_mean_prediction(static_cast<double>(n));
  return st;
}

double exact_mean_cycles(std::uint64_t p) {
  if (p < 3 || p > 1000000) throw domain_fault("exact_mean_cycles needs 3 <= p <= 1e6");
  double sum = 0;
  std::uint64_t count = 0;
  for (std::uint64_t x = 2; x < p; ++x) {
    std::uint64_t A = p, B = x, g = 0;
    long t = 0;
    while (B != 0) {
      std::uint64_t q = A / B, r = A % B;
      t += 4 * (static_cast<long>(bit_length(q)) - 1) + 1;
      A = B;
      B = r;
    }
    g = A;
    if (g != 1) continue;
    sum += static_cast<double>(t);
    ++count;
  }
  return count ? sum / static_cast<double>(count) : 0.0;
}

}  // namespace ecdl
