#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ecdl/ec_group.hpp"
#include "ecdl/rng.hpp"

namespace ecdl {

// End-to-end simulation of the discrete-log algorithm on toy instances:
// exact Fourier-peak sampling, the semiclassical one-control-qubit protocol,
// classical post-processing, and exact success probabilities.

// Discrete law over x' in [0, N) with probability proportional to
// |sin(pi(x'-c)) / (N sin(pi(x'-c)/N))|^2 around a (generally fractional)
// center c. Exactly normalized over the full support.
class PeakDistribution {
 public:
  // center = N*s/q held exactly as a rational (s in [0, q)).
  PeakDistribution(std::uint64_t n_size, std::uint64_t s, std::uint64_t q);
  // generic real center
  PeakDistribution(std::uint64_t n_size, double center);

  double pmf(std::uint64_t x) const;
  std::uint64_t sample(Rng& rng) const;
  double mass_of_range(std::uint64_t lo, std::uint64_t hi) const;  // inclusive bounds
  double total_mass() const;   // 1 - truncation tail
  double tail_bound() const { return tail_bound_; }
  bool degenerate() const { return degenerate_; }
  double center() const { return center_; }
  std::uint64_t size() const { return n_; }

 private:
  void build();
  std::uint64_t n_;
  double center_;
  std::uint64_t center_int_;  // floor(center)
  double frac_;               // center - floor(center)
  double numerator_;          // sin^2(pi frac)
  bool degenerate_;
  double tail_bound_ = 0;
  std::vector<double> prefix_;  // prefix sums of pmf over absolute x'
};

struct MeasurementRecord {
  std::uint64_t x_prime = 0;
  std::uint64_t y_prime = 0;
  std::uint64_t k = 0;  // latent peak index, diagnostics only
  std::optional<Int> recovered_d;
  unsigned window_used = 0;
};

// Peak sampler with per-residue caching (the pmf shape depends on the
// center only through N*s mod q).
class AnalyticSampler {
 public:
  AnalyticSampler(const DlpInstance& inst, unsigned n_bits);
  MeasurementRecord sample(Rng& rng);
  const PeakDistribution& peak_for(std::uint64_t s);
  std::uint64_t fourier_size() const { return n_size_; }

 private:
  Int q_, d_;
  std::uint64_t n_size_;
  std::unordered_map<std::uint64_t, std::unique_ptr<PeakDistribution>> cache_;
};

MeasurementRecord simulate_analytic(const DlpInstance& inst, unsigned n_bits, Rng& rng);

enum class MeasurementOrder { HighToLow, LowToHigh /* negative control */ };

struct SemiclassicalResult {
  MeasurementRecord record;
  double norm_deficit = 0;  // modeled fidelity loss removed along the run
};

SemiclassicalResult simulate_semiclassical(const DlpInstance& inst, unsigned n_bits, Rng& rng,
                                           bool loss_model = false,
                                           MeasurementOrder order = MeasurementOrder::HighToLow);

// Exact joint outcome laws over (x', y'), indexed x'*N + y'. Feasible for
// N <= 512.
std::vector<double> joint_analytic_law(std::uint64_t q, std::uint64_t d, unsigned n_bits);
std::vector<double> enumerate_semiclassical_law(const DlpInstance& inst, unsigned n_bits,
                                                MeasurementOrder order = MeasurementOrder::HighToLow,
                                                std::uint64_t offset = 1);

double total_variation(const std::vector<double>& a, const std::vector<double>& b);

// Classical post-processing: round to (k_hat, m_hat), search the window,
// accept a candidate only when d_tilde * P == Q.
std::optional<Int> postprocess(const MeasurementRecord& rec, const DlpInstance& inst,
                               unsigned n_bits, unsigned window);

struct SuccessProbability {
  double probability = 0;
  double truncation_bound = 0;  // tail mass unaccounted for (0 on full support)
};

// Exact success probability of measure-then-postprocess at the given window,
// evaluated by enumerating peak masses (no sampling). For prime q the
// congruence acceptance used here coincides with candidate verification.
SuccessProbability success_probability(std::uint64_t q, std::uint64_t d, unsigned n_bits,
                                       unsigned window);

}  // namespace ecdl
