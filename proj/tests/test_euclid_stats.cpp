#include <doctest.h>

#include <cmath>

#include "ecdl/euclid_machine.hpp"
#include "ecdl/euclid_stats.hpp"

using namespace ecdl;

TEST_CASE("perturbation stats: determinism and sane scale") {
  PerturbationStats a = perturbation_stats(110, 3000, 42);
  PerturbationStats b = perturbation_stats(110, 3000, 42);
  CHECK(a.mean == b.mean);
  CHECK(a.std_dev == b.std_dev);
  CHECK(a.max == b.max);
  CHECK(a.primes == 3);
  CHECK(a.group_size == 1000);
  // per-prime maxima hover near 1.1 sqrt(n)
  CHECK(a.mean > 9.0);
  CHECK(a.mean < 15.0);
  PerturbationStats c = perturbation_stats(110, 3000, 43);
  CHECK(c.mean != a.mean);
}

TEST_CASE("perturbation of a single run is nonnegative and finite") {
  PerturbMeasure m;
  double v = perturbation_of_run(257, 96, 9, m);
  CHECK(v >= 0);
  CHECK(v < 20);
}

TEST_CASE("quotient tail law") {
  QuotientStats st = quotient_distribution(48, 200000, 5);
  CHECK(st.tail_empirical[1] == 1.0);  // every quotient >= 1
  CHECK(st.tail_model[2] == doctest::Approx(std::log2(1.5)));
  CHECK(st.tail_model[8] == doctest::Approx(std::log2(9.0 / 8.0)));
  CHECK(st.tail_empirical[2] == doctest::Approx(0.585).epsilon(0.02));
  CHECK(st.tail_empirical[8] == doctest::Approx(0.16993).epsilon(0.06));
  for (unsigned q0 = 2; q0 <= 64; ++q0)
    CHECK(st.tail_empirical[q0] <= st.tail_empirical[q0 - 1]);
  CHECK(st.cap_rate_empirical <= 2.0 * st.cap_rate_model * 3);  // loose unit-level guard
}

TEST_CASE("average cycles near 3.5 n") {
  CycleStats st = average_cycles(32, 4000, 6);
  CHECK(st.mean == doctest::Approx(3.5 * 32).epsilon(0.05));
  CHECK(st.model_lq == doctest::Approx(3.5132 * 32).epsilon(0.01));
  // standard deviation tracks sqrt(n)
  CHECK(st.std_dev > 0.5 * std::sqrt(32.0));
  CHECK(st.std_dev < 2.0 * std::sqrt(32.0));
}

TEST_CASE("degenerate exhaustive domain") {
  // p = 3: only x = 2; quotients (1, 2): t = 1 + 5 = 6
  CHECK(cycle_count(3, 2) == 6);
  CHECK(exact_mean_cycles(3) == doctest::Approx(6.0));
  // p = 7 cross-checked against direct enumeration
  double sum = 0;
  int count = 0;
  for (int x = 2; x < 7; ++x) {
    sum += static_cast<double>(cycle_count(7, x));
    ++count;
  }
  CHECK(exact_mean_cycles(7) == doctest::Approx(sum / count));
}

TEST_CASE("stats reject degenerate parameters") {
  CHECK_THROWS_AS(perturbation_stats(4, 10000, 1), domain_fault);
  CHECK_THROWS_AS(perturbation_stats(110, 10, 1), domain_fault);
  CHECK_THROWS_AS(quotient_distribution(48, 10, 1), domain_fault);
  CHECK_THROWS_AS(average_cycles(32, 10, 1), domain_fault);
}
