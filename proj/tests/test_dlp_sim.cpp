#include <doctest.h>

#include <cmath>
#include <map>

#include "ecdl/dlp_sim.hpp"
#include "ecdl/ec_group.hpp"
#include "ecdl/rng.hpp"

using namespace ecdl;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("peak pmf: normalization over the full support") {
  Rng rng(40);
  for (int t = 0; t < 1000; ++t) {
    unsigned n_bits = 6 + rng.below(6);
    std::uint64_t N = 1ull << n_bits;
    double center = rng.next_double() * static_cast<double>(N);
    PeakDistribution pk(N, center);
    CHECK(pk.total_mass() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("zero fractional offset puts unit mass on the center") {
  PeakDistribution pk(1 << 10, 640.0);
  CHECK(pk.degenerate());
  CHECK(pk.pmf(640) == 1.0);
  CHECK(pk.pmf(641) == 0.0);
  Rng rng(1);
  for (int t = 0; t < 100; ++t) CHECK(pk.sample(rng) == 640);
}

TEST_CASE("offset one-half: the two nearest outcomes are each 4/pi^2") {
  PeakDistribution pk(1ull << 20, 0.5);
  double expect = 4.0 / (kPi * kPi);
  CHECK(std::abs(pk.pmf(0) - expect) < 1e-9);
  CHECK(std::abs(pk.pmf(1) - expect) < 1e-9);
}

TEST_CASE("peak symmetry for half-integer centers") {
  PeakDistribution pk(1 << 10, 100.5);
  for (int j = 0; j < 40; ++j)
    CHECK(pk.pmf(100 - j) == doctest::Approx(pk.pmf(101 + j)).epsilon(1e-12));
}

TEST_CASE("tail mass beyond Delta is bounded by 2/Delta") {
  Rng rng(41);
  for (int t = 0; t < 50; ++t) {
    std::uint64_t N = 1 << 12;
    double center = rng.next_double() * static_cast<double>(N);
    PeakDistribution pk(N, center);
    for (std::uint64_t delta : {10ull, 20ull, 50ull}) {
      double inside = 0;
      for (std::uint64_t x = 0; x < N; ++x) {
        double d = std::abs(static_cast<double>(x) - center);
        d = std::min(d, static_cast<double>(N) - d);
        if (d <= static_cast<double>(delta)) inside += pk.pmf(x);
      }
      CHECK(1.0 - inside <= 2.0 / static_cast<double>(delta));
    }
  }
}

TEST_CASE("sampling matches the pmf") {
  PeakDistribution pk(64, 17, 23);
  Rng rng(42);
  std::map<std::uint64_t, int> hist;
  int samples = 40000;
  for (int t = 0; t < samples; ++t) ++hist[pk.sample(rng)];
  double tv = 0;
  for (std::uint64_t x = 0; x < 64; ++x) {
    double emp = hist.count(x) ? static_cast<double>(hist[x]) / samples : 0.0;
    tv += std::abs(emp - pk.pmf(x));
  }
  CHECK(tv / 2 < 0.02);
}

TEST_CASE("analytic joint law: exact-division case and d = 1 symmetry") {
  // q | N: every peak is degenerate, mass sits exactly on (Nk/q, N(dk%q)/q)
  auto law = joint_analytic_law(8, 3, 3);
  std::uint64_t N = 8;
  for (std::uint64_t k = 0; k < 8; ++k) {
    std::uint64_t x = N * k / 8, y = N * ((3 * k) % 8) / 8;
    CHECK(law[x * N + y] == doctest::Approx(1.0 / 8).epsilon(1e-12));
  }
  // d = 1: both peaks share a center for every k
  auto law1 = joint_analytic_law(5, 1, 4);
  std::uint64_t N1 = 16;
  for (std::uint64_t x = 0; x < N1; ++x)
    for (std::uint64_t y = 0; y < N1; ++y)
      CHECK(law1[x * N1 + y] == doctest::Approx(law1[y * N1 + x]).epsilon(1e-9));
}

TEST_CASE("semiclassical law equals the analytic law exactly") {
  for (unsigned long qv : {5ul, 11ul}) {
    DlpInstance inst = find_instance_with_order(qv, 7);
    unsigned n_bits = bit_length(inst.q);
    auto analytic = joint_analytic_law(qv, to_u64(inst.d), n_bits);
    auto semi = enumerate_semiclassical_law(inst, n_bits);
    CHECK(total_variation(semi, analytic) < 1e-9);
    // the law does not depend on the random initial offset
    auto semi2 = enumerate_semiclassical_law(inst, n_bits, MeasurementOrder::HighToLow, 2);
    CHECK(total_variation(semi, semi2) < 1e-9);
  }
}

TEST_CASE("permuted measurement order breaks the agreement (negative control)") {
  DlpInstance inst = find_instance_with_order(11, 7);
  unsigned n_bits = bit_length(inst.q);
  auto analytic = joint_analytic_law(11, to_u64(inst.d), n_bits);
  auto wrong = enumerate_semiclassical_law(inst, n_bits, MeasurementOrder::LowToHigh);
  CHECK(total_variation(wrong, analytic) > 0.01);
}

TEST_CASE("sampled semiclassical runs stay normalized and match the law") {
  DlpInstance inst = find_instance_with_order(11, 9);
  unsigned n_bits = bit_length(inst.q) + 1;
  auto law = enumerate_semiclassical_law(inst, n_bits);
  std::uint64_t N = 1ull << n_bits;
  Rng rng(55);
  std::vector<double> emp(N * N, 0.0);
  int runs = 30000;
  for (int t = 0; t < runs; ++t) {
    auto res = simulate_semiclassical(inst, n_bits, rng);
    CHECK(res.norm_deficit == 0.0);  // loss model off: unit norm throughout
    emp[res.record.x_prime * N + res.record.y_prime] += 1.0 / runs;
  }
  CHECK(total_variation(emp, law) < 0.05);
}

TEST_CASE("loss model reports a deficit near 4n/q") {
  DlpInstance inst = find_toy_instance(10, 4242);
  unsigned n_bits = bit_length(inst.q) + 2;
  Rng rng(66);
  double total = 0;
  int runs = 400;
  for (int t = 0; t < runs; ++t)
    total += simulate_semiclassical(inst, n_bits, rng, true).norm_deficit;
  double mean = total / runs;
  double predict = 4.0 * n_bits / static_cast<double>(to_u64(inst.q));
  CHECK(mean == doctest::Approx(predict).epsilon(0.30));
}

TEST_CASE("postprocess: rounding, the k = 0 dead zone, and verified recovery") {
  DlpInstance inst = find_instance_with_order(101, 11);
  unsigned n_bits = 9;
  std::uint64_t N = 1ull << n_bits;
  std::uint64_t q = to_u64(inst.q), d = to_u64(inst.d);
  // exact-peak record for k != 0 at window 0
  std::uint64_t k = 17;
  MeasurementRecord rec;
  rec.x_prime = (N * k + q / 2) / q;
  rec.y_prime = (N * ((d * k) % q) + q / 2) / q;
  auto got = postprocess(rec, inst, n_bits, 0);
  REQUIRE(got.has_value());
  CHECK(*got == inst.d);
  CHECK(scalar_mul(*got, inst.base, inst.curve) == inst.target);
  // k = 0 rounds x' to zero: no candidate at window 0
  MeasurementRecord zero;
  zero.x_prime = 0;
  zero.y_prime = 0;
  CHECK(!postprocess(zero, inst, n_bits, 0).has_value());
}

TEST_CASE("window widening strictly helps on a borderline register size") {
  DlpInstance inst = find_instance_with_order(101, 11);
  unsigned n_bits = bit_length(inst.q);  // tight register: rounding misses happen
  AnalyticSampler sampler(inst, n_bits);
  Rng rng(77);
  int runs = 4000, succ0 = 0, succ2 = 0;
  for (int t = 0; t < runs; ++t) {
    MeasurementRecord rec = sampler.sample(rng);
    auto d0 = postprocess(rec, inst, n_bits, 0);
    auto d2 = postprocess(rec, inst, n_bits, 2);
    if (d0) {
      ++succ0;
      CHECK(d2.has_value());  // monotone per record
    }
    if (d2) {
      ++succ2;
      CHECK(*d2 == inst.d);
    }
  }
  CHECK(succ2 > succ0);
}

TEST_CASE("success probability: exact-division case and monotonicity in n") {
  // q | N composite case: only k = 0 fails
  SuccessProbability sp = success_probability(8, 3, 3, 0);
  CHECK(sp.probability == doctest::Approx(7.0 / 8).epsilon(1e-9));
  CHECK(sp.truncation_bound == 0.0);
  double prev = 0;
  for (unsigned n_bits = 7; n_bits <= 12; ++n_bits) {
    double pr = success_probability(101, 59, n_bits, 1).probability;
    CHECK(pr >= prev - 1e-12);
    prev = pr;
  }
  CHECK(prev > 0.999);
}

TEST_CASE("exact success probability matches Monte Carlo") {
  DlpInstance inst = find_instance_with_order(101, 11);
  unsigned n_bits = 8;
  unsigned window = 1;
  double exact = success_probability(101, to_u64(inst.d), n_bits, window).probability;
  AnalyticSampler sampler(inst, n_bits);
  Rng rng(88);
  int runs = 20000, succ = 0;
  for (int t = 0; t < runs; ++t)
    if (postprocess(sampler.sample(rng), inst, n_bits, window)) ++succ;
  double emp = static_cast<double>(succ) / runs;
  double sigma = std::sqrt(exact * (1 - exact) / runs);
  CHECK(std::abs(emp - exact) < 4 * sigma + 1e-9);
}

TEST_CASE("record serialization keeps the latent peak for diagnostics only") {
  DlpInstance inst = find_instance_with_order(11, 9);
  Rng rng(5);
  MeasurementRecord rec = simulate_analytic(inst, 5, rng);
  CHECK(rec.k < to_u64(inst.q));
}
